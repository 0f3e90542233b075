import numpy as np
import pytest
from numpy.testing import assert_allclose

from switchsynth.circuits import parse_circuit
from switchsynth.linalg import basis_state, fidelity
from switchsynth.lowering import check_equivalence, lower
from switchsynth.programs import (
    AllocAncilla,
    ApplyLocal,
    CondApply,
    Discard,
    MeasureAncilla,
    SwitchApply,
    parse_program,
    serialize_program,
    simulate_program,
    validate_program,
)

BELL_TEXT = "qubits 2\nh 0\ncnot 0 1\n"


def test_lower_bell_structure():
    program = lower(parse_circuit(BELL_TEXT))
    validate_program(program)
    kinds = [type(inst) for inst in program.instructions]
    assert kinds == [ApplyLocal, AllocAncilla, ApplyLocal, SwitchApply,
                     MeasureAncilla, CondApply, CondApply, Discard]
    alloc = program.instructions[1]
    measure = program.instructions[4]
    plus_cond, minus_cond = program.instructions[5:7]
    assert alloc.ancilla == "a0" and alloc.state == "plus"
    assert measure.theta == pytest.approx(np.pi / 2)
    assert measure.result == "m0"
    assert (plus_cond.result, plus_cond.outcome) == ("m0", "plus")
    assert (minus_cond.result, minus_cond.outcome) == ("m0", "minus")
    switch = program.instructions[3]
    # pre gate and switched gate A coincide, so they share a table entry
    assert program.instructions[2].matrix == switch.gate_a
    assert switch.gate_a != switch.gate_b


def test_lower_shares_matrices_between_identical_gates():
    program = lower(parse_circuit("qubits 2\ncnot 0 1\ncnot 0 1\n"))
    assert len(program.matrices) == 4  # pre = A, B, and the two corrections
    labels = [inst.ancilla for inst in program.instructions
              if isinstance(inst, AllocAncilla)]
    assert labels == ["a0", "a1"]


def test_lower_single_qubit_gates_pass_through():
    program = lower(parse_circuit("qubits 1\nh 0\nrx 0 theta=0.5\n"))
    assert all(isinstance(inst, ApplyLocal) for inst in program.instructions)
    assert len(program.matrices) == 2


def test_lowered_bell_gives_bell_state_on_both_branches():
    program = lower(parse_circuit(BELL_TEXT))
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = np.sqrt(0.5)
    for branch in ("plus", "minus"):
        trace = simulate_program(program, basis_state(2, 0), forced=branch)
        assert 1.0 - fidelity(trace.final_state, bell) < 1e-12
        label, outcome, probability = trace.measurement_record[0]
        assert (label, outcome) == ("m0", branch)
        assert probability == pytest.approx(0.5, abs=1e-12)


def test_lowered_program_serializes_and_reloads():
    program = lower(parse_circuit(BELL_TEXT))
    text = serialize_program(program)
    reloaded = parse_program(text)
    trace_a = simulate_program(program, basis_state(2, 0), forced="plus")
    trace_b = simulate_program(reloaded, basis_state(2, 0), forced="plus")
    assert_allclose(trace_a.final_state, trace_b.final_state, atol=0)
    assert serialize_program(reloaded) == text


def test_check_equivalence_bell():
    circuit = parse_circuit(BELL_TEXT)
    report = check_equivalence(circuit, lower(circuit), trials=20, seed=1)
    assert report.passed
    assert report.max_infidelity < 1e-10
    assert report.trials == 20
    assert report.branch_assignments == 2
    doc = report.as_dict()
    assert doc["passed"] is True
    assert doc["branch_assignments"] == 2


def test_check_equivalence_enumerates_assignments():
    text = ("qubits 2\n"
            "cnot 0 1\n"
            "cu 1 0 alpha=0.4 theta=0.9 nx=0.0 ny=0.0 nz=1.0\n"
            "barenco 0 1 alpha=1.2 phi=0.3 theta=2.0\n")
    circuit = parse_circuit(text)
    report = check_equivalence(circuit, lower(circuit), trials=5, seed=2)
    assert report.branch_assignments == 8
    assert report.passed
    assert report.max_infidelity < 1e-10


def test_check_equivalence_samples_when_too_many_branches():
    lines = ["qubits 2"] + ["cz 0 1"] * 11
    circuit = parse_circuit("\n".join(lines) + "\n")
    report = check_equivalence(circuit, lower(circuit), trials=1, seed=3)
    assert report.branch_assignments == 1024
    assert report.passed


def test_check_equivalence_detects_mismatch():
    circuit = parse_circuit(BELL_TEXT)
    other = parse_circuit("qubits 2\nh 0\ncz 0 1\n")
    report = check_equivalence(other, lower(circuit), trials=10, seed=4)
    assert not report.passed
    assert report.max_infidelity > 1e-3


def test_check_equivalence_rejects_size_mismatch():
    circuit = parse_circuit(BELL_TEXT)
    program = lower(parse_circuit("qubits 3\nh 0\n"))
    with pytest.raises(ValueError):
        check_equivalence(circuit, program)


def test_lowered_mixed_circuit_matches_reference():
    text = ("qubits 3\n"
            "h 0\n"
            "cu 0 2 alpha=-0.7 theta=0.4 nx=0.6 ny=0.0 nz=0.8\n"
            "z 1\n"
            "cnot 2 1\n"
            "barenco 1 0 alpha=0.9 phi=1.4 theta=0.2\n")
    circuit = parse_circuit(text)
    report = check_equivalence(circuit, lower(circuit), trials=10, seed=5)
    assert report.passed
    assert report.max_infidelity < 1e-10

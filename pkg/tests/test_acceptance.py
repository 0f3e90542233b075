"""Acceptance suite: one test per release criterion.

Each test prints a single ``criterion N [label]: PASS (t)`` line (visible
with ``pytest -s``) and enforces both the numeric tolerances and a wall-time
budget. Run as ``pytest tests/test_acceptance.py -v``.
"""

import json
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from switchsynth.circuits import parse_circuit
from switchsynth.cli import main
from switchsynth.linalg import (
    H,
    I2,
    X,
    Z,
    basis_state,
    distance_up_to_phase,
    fidelity,
    operator_schmidt_rank,
    rotation,
    rotation_x,
    rotation_z,
    tensor,
)
from switchsynth.lowering import check_equivalence, lower
from switchsynth.programs import simulate_program
from switchsynth.sampling import random_kraus_channel, random_density, random_unitary
from switchsynth.switch import (
    _four_term_map,
    branch_gates,
    branch_gates_tensor,
    choi_matrix,
    switch_channel,
)
from switchsynth.synthesis import (
    barenco_matrix,
    conjugation_identities,
    cu_matrix,
    preset,
    preset_barenco,
    random_spec,
    synthesize,
    verify_synthesis,
)

import oracles

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)


@contextmanager
def criterion(number: int, label: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"criterion {number} [{label}]: FAIL")
        raise
    elapsed = time.perf_counter() - start
    assert elapsed < budget, (f"criterion {number} took {elapsed:.3f}s, "
                              f"budget {budget}s")
    print(f"criterion {number} [{label}]: PASS ({elapsed:.3f}s)")


def reconstruction_residuals(spec, target):
    plan = synthesize(spec)
    s_plus, s_minus = plan.branch_operators()
    return (distance_up_to_phase(plan.post_plus @ s_plus @ plan.pre, target),
            distance_up_to_phase(plan.post_minus @ s_minus @ plan.pre, target))


def test_criterion_1_cnot_plan():
    with criterion(1, "cnot plan and gate set", 0.1):
        spec = preset("cnot")
        plan = synthesize(spec)
        for residual in reconstruction_residuals(spec, CNOT):
            assert residual <= 1e-10
        phase = np.exp(-0.25j * math.pi)
        expected = {
            "pre": tensor(X, Z),
            "gate_a": tensor(X, Z),
            "gate_b": tensor(rotation_z(math.pi / 2), rotation_x(math.pi / 2)),
            "post_plus": phase * np.eye(4),
            "post_minus": -phase * tensor(Z, X),
        }
        for name, want in expected.items():
            got = getattr(plan, name)
            assert np.max(np.abs(got - want)) <= 1e-12, name


def test_criterion_2_cz_plan():
    with criterion(2, "cz plan and gate set", 0.1):
        spec = preset("cz")
        plan = synthesize(spec)
        for residual in reconstruction_residuals(spec, CZ):
            assert residual <= 1e-10
        phase = np.exp(-0.25j * math.pi)
        expected = {
            "pre": tensor(X, X),
            "gate_a": tensor(X, X),
            "gate_b": tensor(rotation_z(math.pi / 2), rotation_z(math.pi / 2)),
            "post_plus": phase * np.eye(4),
            "post_minus": -phase * tensor(Z, Z),
        }
        for name, want in expected.items():
            got = getattr(plan, name)
            assert np.max(np.abs(got - want)) <= 1e-12, name
        # cz is cnot conjugated by a target-side basis change
        assert np.max(np.abs(tensor(I2, H) @ CNOT @ tensor(I2, H) - CZ)) <= 1e-12


def test_criterion_3_barenco_grid():
    with criterion(3, "barenco parameter grid", 5.0):
        grid = np.linspace(0.0, 2 * math.pi, 10, endpoint=False)
        worst = 0.0
        for alpha_b in grid:
            for phi_b in grid:
                for theta_b in grid:
                    spec = preset_barenco(alpha_b, phi_b, theta_b)
                    target = barenco_matrix(alpha_b, phi_b, theta_b)
                    worst = max(worst, *reconstruction_residuals(spec, target))
        assert worst <= 1e-10


def test_criterion_4_random_targets_certified():
    with criterion(4, "random targets certified", 30.0):
        rng = np.random.default_rng(404)
        specs = [random_spec(rng) for _ in range(1000)]
        for spec in specs:
            report = verify_synthesis(spec, trials=10, seed=17)
            assert report.passed, spec
        for spec in specs[::20]:  # 50-spec subset at full depth
            report = verify_synthesis(spec, trials=100, seed=23)
            assert report.passed
            assert abs(report.branch_probabilities[0] - 0.5) <= 1e-10
            assert abs(report.branch_probabilities[1] - 0.5) <= 1e-10
            assert report.max_infidelity <= 1e-10


def test_criterion_5_bare_corrections():
    with criterion(5, "bare corrections and identities", 5.0):
        rng = np.random.default_rng(505)
        worst = 0.0
        for _ in range(1000):
            spec = random_spec(rng)
            plan = synthesize(spec)
            s_plus, s_minus = plan.branch_operators()
            rzn_target = cu_matrix(spec) @ np.linalg.inv(
                tensor(rotation_z(spec.alpha), rotation(spec.axis, -spec.theta)))
            bare_plus = tensor(rotation_z(math.pi / 2),
                               rotation(spec.axis, math.pi / 2))
            bare_minus = tensor(rotation_z(-math.pi / 2),
                                rotation(spec.axis, -math.pi / 2))
            worst = max(
                worst,
                distance_up_to_phase(bare_plus @ s_plus @ plan.pre, rzn_target),
                distance_up_to_phase(bare_minus @ s_minus @ plan.pre, rzn_target))
        assert worst <= 1e-10
        for _ in range(100):
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            assert max(conjugation_identities(axis).values()) <= 1e-12


def test_criterion_6_noisy_channel_forms():
    with criterion(6, "noisy channel forms", 10.0):
        rng = np.random.default_rng(606)
        for k in range(200):
            chan_a = random_kraus_channel(rng, rank=1 + k % 2)
            chan_b = random_kraus_channel(rng, rank=2 - (k // 2) % 2)
            rho = random_density(rng, 2)
            omega = random_density(rng, 2)
            got = switch_channel(chan_a, chan_b, rho, omega)
            want = oracles.kraus_form_switch(chan_a.operators, chan_b.operators,
                                             rho, omega)
            assert np.max(np.abs(got - want)) <= 1e-12
            assert abs(np.trace(got) - 1.0) <= 1e-10
            choi = choi_matrix(
                lambda m: _four_term_map(chan_a.operators, chan_b.operators,
                                         m, omega), 2)
            assert np.linalg.eigvalsh(choi).min() >= -1e-9


def test_criterion_7_factorwise_branch_structure():
    with criterion(7, "factorwise branch structure", 10.0):
        rng = np.random.default_rng(707)
        for k in range(500):
            n = 2 if k % 2 == 0 else 3
            a_list = [random_unitary(rng, 2) for _ in range(n)]
            b_list = [random_unitary(rng, 2) for _ in range(n)]
            theta = rng.uniform(-2 * math.pi, 2 * math.pi)
            fast = branch_gates_tensor(a_list, b_list, theta)
            dense = branch_gates(tensor(*a_list), tensor(*b_list), theta)
            for f, d in zip(fast, dense):
                assert np.max(np.abs(f - d)) <= 1e-12

        def noncommuting_pair(generator):
            while True:
                a = random_unitary(generator, 2)
                b = random_unitary(generator, 2)
                if np.linalg.norm(a @ b - b @ a) > 1e-2:
                    return a, b

        for _ in range(100):
            pairs = [noncommuting_pair(rng) for _ in range(2)]
            a_list = [p[0] for p in pairs]
            b_list = [p[1] for p in pairs]
            # definite-order angles keep the branches separable
            for theta in (0.0, math.pi):
                for s in branch_gates_tensor(a_list, b_list, theta):
                    assert operator_schmidt_rank(s) == 1
            # commuting factor pairs keep them separable at any angle
            axis = rng.standard_normal(3)
            axis /= np.linalg.norm(axis)
            comm_a = [rotation(axis, rng.uniform(0, 2 * math.pi)) for _ in range(2)]
            comm_b = [rotation(axis, rng.uniform(0, 2 * math.pi)) for _ in range(2)]
            for s in branch_gates_tensor(comm_a, comm_b, rng.uniform(0.3, 2.8)):
                assert operator_schmidt_rank(s) == 1
            # noncommuting pairs at a superposing angle must entangle
            for s in branch_gates_tensor(a_list, b_list, math.pi / 3):
                assert operator_schmidt_rank(s) >= 2


def test_criterion_8_end_to_end_lowering():
    with criterion(8, "end to end lowering", 10.0):
        circuits = {
            "cnot": "qubits 2\ncnot 0 1\n",
            "cz": "qubits 2\ncz 0 1\n",
            "cu": ("qubits 2\ncu 0 1 alpha=0.4 theta=1.1 "
                   "nx=0.6 ny=0.0 nz=0.8\n"),
            "barenco": "qubits 2\nbarenco 0 1 alpha=1.3 phi=0.5 theta=2.2\n",
        }
        for name, text in circuits.items():
            circuit = parse_circuit(text)
            report = check_equivalence(circuit, lower(circuit),
                                       trials=100, seed=808)
            assert report.passed, name
            assert report.max_infidelity <= 1e-10
            assert report.branch_assignments == 2

        bell_circuit = parse_circuit("qubits 2\nh 0\ncnot 0 1\n")
        program = lower(bell_circuit)
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = math.sqrt(0.5)
        for branch in ("plus", "minus"):
            trace = simulate_program(program, basis_state(2, 0), forced=branch)
            assert 1.0 - fidelity(trace.final_state, bell) <= 1e-10


def test_criterion_9_cli_contract(tmp_path, capsys):
    with criterion(9, "cli determinism and exit codes", 5.0):
        circ = tmp_path / "bell.circ"
        circ.write_text("qubits 2\nh 0\ncnot 0 1\n")
        prog = tmp_path / "bell.json"
        bad = tmp_path / "bad.circ"
        bad.write_text("qubits 2\ncnot 0 9\n")
        mismatch = tmp_path / "mismatch.circ"
        mismatch.write_text("qubits 2\nh 0\ncz 0 1\n")

        # determinism: identical bytes for identical invocations
        synth_docs = []
        for name in ("s1.json", "s2.json"):
            path = tmp_path / name
            assert main(["synth", "--gate", "cnot", "--trials", "20",
                         "--output", str(path)]) == 0
            synth_docs.append(path.read_bytes())
        assert synth_docs[0] == synth_docs[1]

        lowered = []
        for name in ("p1.json", "p2.json"):
            path = tmp_path / name
            assert main(["lower", str(circ), "--output", str(path)]) == 0
            lowered.append(path.read_bytes())
        assert lowered[0] == lowered[1]
        prog.write_bytes(lowered[0])

        sim_outs = []
        for _ in range(2):
            assert main(["simulate", str(prog), "--input", "random",
                         "--seed", "5"]) == 0
            sim_outs.append(capsys.readouterr().out)
        assert sim_outs[0] == sim_outs[1]
        json.loads(sim_outs[0])

        # exit code 0: healthy verification
        assert main(["verify", "--suite", "switch", "--trials", "8"]) == 0
        capsys.readouterr()

        # exit code 1: a check that runs but fails
        assert main(["simulate", str(prog), "--check-against", str(mismatch),
                     "--trials", "5"]) == 1
        capsys.readouterr()

        # exit code 2: usage, parse, and I/O errors
        assert main(["synth", "--gate", "cu"]) == 2
        assert main(["lower", str(bad)]) == 2
        assert main(["lower", str(tmp_path / "missing.circ")]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err

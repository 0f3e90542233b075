"""Command line interface.

Subcommands: ``synth`` (plan + certificate for one controlled gate),
``verify`` (property suites), ``lower`` (circuit file to switch program),
``simulate`` (run a program, optionally checking it against a circuit).

Exit codes: 0 success, 1 a verification or equivalence check failed,
2 usage, parse, or I/O errors. Given the same seed and inputs, emitted
documents are byte-identical.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .circuits import CircuitParseError, parse_circuit
from .jsonio import dumps, format_float
from .lowering import check_equivalence, lower
from .programs import (
    ProgramError,
    matrix_entries,
    parse_program,
    serialize_program,
    simulate_program,
)
from .sampling import random_state
from .suites import SUITE_NAMES, run_suite
from .synthesis import (
    ControlledGateSpec,
    preset,
    preset_barenco,
    synthesize,
    verify_synthesis,
)
from .linalg import basis_state

GATE_CHOICES = ("cnot", "cz", "cu", "barenco")

_GATE_FLAGS = {
    "cnot": (),
    "cz": (),
    "cu": ("alpha", "theta", "nx", "ny", "nz"),
    "barenco": ("alpha", "phi", "theta"),
}


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _format_matrix_text(m: np.ndarray) -> list[str]:
    rows = []
    for row in np.asarray(m):
        rows.append("  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
    return rows


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _add_common(parser: argparse.ArgumentParser, *, trials: bool = True) -> None:
    parser.add_argument("--seed", type=int, default=42)
    if trials:
        parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--tolerance", type=float, default=1e-10)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="switchsynth",
        description="Controlled gates from single-qubit gates in superposed "
                    "causal orders.")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize and certify one gate")
    synth.add_argument("--gate", choices=GATE_CHOICES, required=True)
    for flag in ("alpha", "theta", "phi", "nx", "ny", "nz"):
        synth.add_argument(f"--{flag}", type=float, default=None)
    _add_common(synth)

    verify = sub.add_parser("verify", help="run a property suite")
    verify.add_argument("--suite", choices=SUITE_NAMES, required=True)
    _add_common(verify)

    lower_cmd = sub.add_parser("lower", help="compile a circuit file")
    lower_cmd.add_argument("input", metavar="CIRCUIT")
    lower_cmd.add_argument("--output", default=None, metavar="PATH")

    simulate = sub.add_parser("simulate", help="run a switch program")
    simulate.add_argument("program", metavar="PROGRAM")
    simulate.add_argument("--input", default="zeros",
                          help="zeros, basis:K, or random (default zeros)")
    simulate.add_argument("--check-against", default=None, metavar="CIRCUIT")
    _add_common(simulate)
    return parser


def _spec_for_gate(args, parser: argparse.ArgumentParser) -> ControlledGateSpec:
    needed = _GATE_FLAGS[args.gate]
    missing = [f"--{name}" for name in needed if getattr(args, name) is None]
    if missing:
        parser.error(f"--gate {args.gate} requires {' '.join(missing)}")
    if args.gate in ("cnot", "cz"):
        return preset(args.gate)
    if args.gate == "barenco":
        return preset_barenco(args.alpha, args.phi, args.theta)
    return ControlledGateSpec(alpha=args.alpha, theta=args.theta,
                              axis=(args.nx, args.ny, args.nz))


def cmd_synth(args, parser: argparse.ArgumentParser) -> int:
    spec = _spec_for_gate(args, parser)
    plan = synthesize(spec)
    report = verify_synthesis(spec, trials=args.trials, seed=args.seed,
                              tolerance=args.tolerance, target_name=args.gate)
    matrices = {
        "pre": plan.pre,
        "gate_a": plan.gate_a,
        "gate_b": plan.gate_b,
        "post_plus": plan.post_plus,
        "post_minus": plan.post_minus,
    }
    factors = {
        "pre_control": plan.pre_control, "pre_target": plan.pre_target,
        "a_control": plan.a_control, "a_target": plan.a_target,
        "b_control": plan.b_control, "b_target": plan.b_target,
        "post_plus_control": plan.post_plus_control,
        "post_plus_target": plan.post_plus_target,
        "post_minus_control": plan.post_minus_control,
        "post_minus_target": plan.post_minus_target,
    }
    if args.format == "json":
        doc = report.as_dict()
        doc["spec"] = {
            "alpha": spec.alpha, "theta": spec.theta,
            "axis": list(spec.axis), "perp": list(spec.perp),
        }
        doc["plan"] = {
            "measurement_theta": plan.measurement_theta,
            "phase": _complex_pair(plan.phase),
            **{key: matrix_entries(m) for key, m in matrices.items()},
            "factors": {key: matrix_entries(m) for key, m in factors.items()},
        }
        text = dumps(doc)
    else:
        lines = [f"target: {args.gate}"]
        lines.append(f"spec: alpha={format_float(spec.alpha)} "
                     f"theta={format_float(spec.theta)} "
                     f"axis=({', '.join(format_float(v) for v in spec.axis)}) "
                     f"perp=({', '.join(format_float(v) for v in spec.perp)})")
        lines.append(f"measurement_theta: {format_float(plan.measurement_theta)}")
        lines.append(f"phase: {plan.phase.real:+.6f}{plan.phase.imag:+.6f}j")
        for key, m in matrices.items():
            lines.append(f"{key}:")
            lines += ["  " + row for row in _format_matrix_text(m)]
        lines.append(f"residual_plus: {format_float(report.residual_plus)}")
        lines.append(f"residual_minus: {format_float(report.residual_minus)}")
        lines.append(f"bare_correction_residual: {format_float(report.bare_correction_residual)}")
        lines.append("branch_probabilities: "
                     f"{format_float(report.branch_probabilities[0])} "
                     f"{format_float(report.branch_probabilities[1])}")
        lines.append(f"max_infidelity: {format_float(report.max_infidelity)}")
        lines.append(f"trials: {report.trials}")
        lines.append(f"seed: {report.seed}")
        lines.append(f"passed: {str(report.passed).lower()}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.output)
    return 0 if report.passed else 1


def cmd_verify(args) -> int:
    results = run_suite(args.suite, trials=args.trials, seed=args.seed,
                        tolerance=args.tolerance)
    passed = all(r.passed for r in results)
    if args.format == "json":
        doc = {
            "suite": args.suite,
            "trials": args.trials,
            "seed": args.seed,
            "properties": [r.as_dict() for r in results],
            "passed": passed,
        }
        text = dumps(doc)
    else:
        lines = [f"suite: {args.suite} (trials={args.trials}, seed={args.seed})"]
        for r in results:
            status = "pass" if r.passed else "FAIL"
            lines.append(f"  [{status}] {r.suite}/{r.name}: "
                         f"max_residual={format_float(r.max_residual)} "
                         f"tolerance={format_float(r.tolerance)}")
        lines.append(f"passed: {str(passed).lower()}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.output)
    if not passed:
        failing = ", ".join(f"{r.suite}/{r.name}" for r in results if not r.passed)
        print(f"failing properties: {failing}", file=sys.stderr)
    return 0 if passed else 1


def cmd_lower(args) -> int:
    with open(args.input) as handle:
        circuit = parse_circuit(handle.read())
    _write_output(serialize_program(lower(circuit)), args.output)
    return 0


def _initial_state(kind: str, num_qubits: int, seed: int) -> np.ndarray:
    if kind == "zeros":
        return basis_state(num_qubits, 0)
    if kind == "random":
        return random_state(np.random.default_rng([seed, 1]), num_qubits)
    if kind.startswith("basis:"):
        return basis_state(num_qubits, int(kind.split(":", 1)[1]))
    raise ValueError(f"unknown input kind {kind!r}, expected zeros, "
                     f"basis:K, or random")


def cmd_simulate(args) -> int:
    with open(args.program) as handle:
        program = parse_program(handle.read())
    state = _initial_state(args.input, program.num_data_qubits, args.seed)
    trace = simulate_program(program, state, seed=args.seed)
    equivalence = None
    if args.check_against is not None:
        with open(args.check_against) as handle:
            circuit = parse_circuit(handle.read())
        equivalence = check_equivalence(circuit, program, trials=args.trials,
                                        seed=args.seed, tolerance=args.tolerance)
    passed = equivalence.passed if equivalence is not None else True
    if args.format == "json":
        doc = {
            "num_data_qubits": program.num_data_qubits,
            "input": args.input,
            "seed": args.seed,
            "final_state": [_complex_pair(z) for z in trace.final_state],
            "measurements": [
                {"label": label, "outcome": outcome, "probability": probability}
                for label, outcome, probability in trace.measurement_record
            ],
        }
        if equivalence is not None:
            doc["equivalence"] = equivalence.as_dict()
        doc["passed"] = passed
        text = dumps(doc)
    else:
        lines = [f"input: {args.input} (seed={args.seed})"]
        amplitudes = "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j"
                               for z in trace.final_state)
        lines.append(f"final_state: {amplitudes}")
        for label, outcome, probability in trace.measurement_record:
            lines.append(f"measured {label}: {outcome} "
                         f"(probability {format_float(probability)})")
        if equivalence is not None:
            lines.append(f"max_infidelity: "
                         f"{format_float(equivalence.max_infidelity)} over "
                         f"{equivalence.trials} trials x "
                         f"{equivalence.branch_assignments} branch assignments")
        lines.append(f"passed: {str(passed).lower()}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.output)
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        if args.command == "synth":
            return cmd_synth(args, parser)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "lower":
            return cmd_lower(args)
        return cmd_simulate(args)
    except SystemExit as err:  # parser.error inside a command
        return int(err.code or 0)
    except (CircuitParseError, ProgramError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

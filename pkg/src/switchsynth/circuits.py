"""Tiny gate-circuit IR with a line-oriented text format.

Format: a ``qubits N`` header, then one gate per line as
``name operand... key=value...`` with angles in radians and ``#`` comments.

    qubits 2
    h 0
    cnot 0 1            # controlled gates list control first
    cu 0 1 alpha=0.5 theta=1.0 nx=1.0 ny=0.0 nz=0.0

Parsing and printing round-trip: parse(print(parse(text))) == parse(text).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .linalg import H, I2, X, Y, Z, apply_matrix, rotation, state_num_qubits
from .synthesis import barenco_matrix, cu_matrix, preset, preset_barenco, ControlledGateSpec

# gate name -> (operand count, parameter names in canonical order)
GATES: dict[str, tuple[int, tuple[str, ...]]] = {
    "x": (1, ()),
    "y": (1, ()),
    "z": (1, ()),
    "h": (1, ()),
    "rx": (1, ("theta",)),
    "ry": (1, ("theta",)),
    "rz": (1, ("theta",)),
    "rn": (1, ("theta", "nx", "ny", "nz")),
    "cnot": (2, ()),
    "cz": (2, ()),
    "cu": (2, ("alpha", "theta", "nx", "ny", "nz")),
    "barenco": (2, ("alpha", "phi", "theta")),
}

CONTROLLED_GATES = ("cnot", "cz", "cu", "barenco")

CNOT_MATRIX = np.array([[1, 0, 0, 0],
                        [0, 1, 0, 0],
                        [0, 0, 0, 1],
                        [0, 0, 1, 0]], dtype=complex)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)

_INT_RE = re.compile(r"^\d+$")
_FLOAT_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

# hand-typed axes are accepted when this close to unit length, then snapped
AXIS_NORM_ATOL = 1e-6


class CircuitParseError(ValueError):
    """Parse failure with 1-based line and column of the offending token."""

    def __init__(self, reason: str, line: int, column: int):
        super().__init__(f"{reason}, line {line}, column {column}")
        self.reason = reason
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Instruction:
    """One gate application; params is a (name, value) tuple in canonical order."""

    gate: str
    qubits: tuple[int, ...]
    params: tuple[tuple[str, float], ...] = ()

    def param(self, name: str) -> float:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    instructions: tuple[Instruction, ...]


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    body = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", body)]


def _snap_axis(values: dict[str, float], line: int, column: int) -> None:
    axis = np.array([values["nx"], values["ny"], values["nz"]])
    norm = np.linalg.norm(axis)
    if abs(norm - 1.0) > AXIS_NORM_ATOL:
        raise CircuitParseError(f"axis (nx, ny, nz) must be unit length, got |n| = {norm}",
                                line, column)
    if abs(norm - 1.0) > 1e-12:  # keep reparsing a printed circuit a fixed point
        axis = axis / norm
        values["nx"], values["ny"], values["nz"] = (float(v) for v in axis)


def parse_circuit(text: str) -> Circuit:
    """Parse the text format; raises CircuitParseError with location on failure."""
    num_qubits = None
    header_seen = False
    instructions: list[Instruction] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens_with_columns(raw)
        if not tokens:
            continue

        if not header_seen:
            word, col = tokens[0]
            if word != "qubits":
                raise CircuitParseError(f"expected 'qubits' header, got {word!r}",
                                        line_no, col)
            if len(tokens) != 2:
                raise CircuitParseError("header must be 'qubits N'", line_no, col)
            count, ccol = tokens[1]
            if not _INT_RE.match(count):
                raise CircuitParseError(f"malformed qubit count {count!r}", line_no, ccol)
            num_qubits = int(count)
            header_seen = True
            continue

        name, name_col = tokens[0]
        if name not in GATES:
            raise CircuitParseError(f"unknown gate {name!r}", line_no, name_col)
        arity, param_names = GATES[name]

        if len(tokens) - 1 < arity:
            raise CircuitParseError(
                f"{name} takes {arity} qubit operand(s), got {len(tokens) - 1}",
                line_no, name_col)
        qubits = []
        for token, col in tokens[1:1 + arity]:
            if not _INT_RE.match(token):
                raise CircuitParseError(f"malformed qubit index {token!r}", line_no, col)
            q = int(token)
            if q >= num_qubits:
                raise CircuitParseError(f"qubit {q} out of range", line_no, col)
            qubits.append(q)
        if len(set(qubits)) != len(qubits):
            raise CircuitParseError("operands must be distinct qubits",
                                    line_no, name_col)

        values: dict[str, float] = {}
        for token, col in tokens[1 + arity:]:
            if "=" not in token:
                raise CircuitParseError(
                    f"expected name=value parameter, got {token!r}", line_no, col)
            key, _, raw_value = token.partition("=")
            if key not in param_names:
                raise CircuitParseError(f"unknown parameter {key!r} for {name}",
                                        line_no, col)
            if key in values:
                raise CircuitParseError(f"duplicate parameter {key!r}", line_no, col)
            if not _FLOAT_RE.match(raw_value):
                raise CircuitParseError(f"malformed number {raw_value!r}", line_no, col)
            values[key] = float(raw_value)
        for key in param_names:
            if key not in values:
                raise CircuitParseError(f"missing parameter {key!r} for {name}",
                                        line_no, name_col)

        if "nx" in param_names:
            _snap_axis(values, line_no, name_col)

        instructions.append(Instruction(
            gate=name,
            qubits=tuple(qubits),
            params=tuple((key, values[key]) for key in param_names),
        ))

    if not header_seen:
        raise CircuitParseError("missing 'qubits' header", 1, 1)
    return Circuit(num_qubits=num_qubits, instructions=tuple(instructions))


def format_circuit(circuit: Circuit) -> str:
    """Render a circuit back to text; parsing the result is a fixed point."""
    lines = [f"qubits {circuit.num_qubits}"]
    for inst in circuit.instructions:
        parts = [inst.gate, *(str(q) for q in inst.qubits)]
        parts += [f"{key}={value!r}" for key, value in inst.params]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def controlled_gate_spec(inst: Instruction) -> ControlledGateSpec:
    """Target spec of a controlled-gate instruction."""
    if inst.gate in ("cnot", "cz"):
        return preset(inst.gate)
    if inst.gate == "cu":
        return ControlledGateSpec(
            alpha=inst.param("alpha"), theta=inst.param("theta"),
            axis=(inst.param("nx"), inst.param("ny"), inst.param("nz")))
    if inst.gate == "barenco":
        return preset_barenco(inst.param("alpha"), inst.param("phi"),
                              inst.param("theta"))
    raise ValueError(f"{inst.gate} is not a controlled gate")


def instruction_matrix(inst: Instruction) -> np.ndarray:
    """Direct matrix of one instruction (2x2 or 4x4, control first)."""
    if inst.gate == "x":
        return X.copy()
    if inst.gate == "y":
        return Y.copy()
    if inst.gate == "z":
        return Z.copy()
    if inst.gate == "h":
        return H.copy()
    if inst.gate == "rx":
        return rotation((1.0, 0.0, 0.0), inst.param("theta"))
    if inst.gate == "ry":
        return rotation((0.0, 1.0, 0.0), inst.param("theta"))
    if inst.gate == "rz":
        return rotation((0.0, 0.0, 1.0), inst.param("theta"))
    if inst.gate == "rn":
        return rotation((inst.param("nx"), inst.param("ny"), inst.param("nz")),
                        inst.param("theta"))
    if inst.gate == "cnot":
        return CNOT_MATRIX.copy()
    if inst.gate == "cz":
        return CZ_MATRIX.copy()
    if inst.gate == "cu":
        return cu_matrix(controlled_gate_spec(inst))
    if inst.gate == "barenco":
        return barenco_matrix(inst.param("alpha"), inst.param("phi"),
                              inst.param("theta"))
    raise ValueError(f"unknown gate {inst.gate!r}")


def simulate_circuit(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Reference state-vector semantics: apply each gate's direct matrix."""
    state = np.asarray(state, dtype=complex)
    if state_num_qubits(state) != circuit.num_qubits:
        raise ValueError(f"state has {state_num_qubits(state)} qubits, "
                         f"circuit needs {circuit.num_qubits}")
    for inst in circuit.instructions:
        state = apply_matrix(state, instruction_matrix(inst), inst.qubits)
    return state

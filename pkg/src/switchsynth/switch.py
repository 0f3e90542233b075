"""Quantum switch engine.

Two operations applied in a superposition of their two orderings, controlled
by an ancilla qubit: the joint gate acts as A B on the target when the
ancilla is |0> and as B A when it is |1>. The module covers the unitary
joint gate, ancilla measurement in a tunable basis, the per-branch effective
operators, and the channel-level construction for noisy operations,
including the N-operation generalization with an N!-dimensional control.

The ancilla (control) is always the LAST tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .linalg import (
    ALGEBRA_ATOL,
    P0,
    P1,
    UNITARY_ATOL,
    Z,
    dagger,
    require_density,
    require_normalized,
    require_square,
    require_unitary,
    state_num_qubits,
    tensor,
)

# Branches at or below this probability are reported as probability 0 with no
# post-state instead of normalizing a vanishing vector.
ZERO_BRANCH_ATOL = 1e-18


class KrausChannel:
    """A completely positive trace-preserving map given by Kraus operators.

    Operators must be square, share one dimension, and satisfy the
    completeness relation sum_i K_i^dag K_i = I within 1e-10.
    """

    def __init__(self, operators):
        ops = tuple(np.asarray(k, dtype=complex) for k in operators)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dim = require_square(ops[0], "Kraus operator").shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for k in ops:
            k = require_square(k, "Kraus operator")
            if k.shape[0] != dim:
                raise ValueError("Kraus operators must share one dimension")
            total += dagger(k) @ k
        if np.linalg.norm(total - np.eye(dim)) > UNITARY_ATOL:
            raise ValueError("Kraus operators do not satisfy completeness")
        self.operators = ops

    @classmethod
    def from_unitary(cls, u: np.ndarray) -> "KrausChannel":
        return cls((require_unitary(u, "unitary"),))

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    # input and output dimensions coincide for every channel built here
    input_dim = dim
    output_dim = dim

    @property
    def rank(self) -> int:
        return len(self.operators)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        return sum(k @ rho @ dagger(k) for k in self.operators)


@dataclass(frozen=True, eq=False)
class SwitchJoint:
    """Joint unitary of two operations in superposed orders (control last)."""

    target_dim: int
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One branch of an ancilla measurement.

    ``post_state`` is normalized with the ancilla removed; it is None when
    the branch has probability 0.
    """

    branch: str
    probability: float
    post_state: np.ndarray | None


def switch_unitary(a: np.ndarray, b: np.ndarray) -> SwitchJoint:
    """Joint gate A B (x) |0><0| + B A (x) |1><1| on target (x) control.

    Equivalently (1/2)[{A,B} (x) I + [A,B] (x) Z]; unitary whenever a and b
    are.
    """
    a = require_unitary(a, "a")
    b = require_unitary(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    joint = tensor(a @ b, P0) + tensor(b @ a, P1)
    return SwitchJoint(target_dim=a.shape[0], matrix=joint)


def apply_switch(joint: SwitchJoint, psi: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Run the joint gate on target state psi and control qubit state omega."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    omega = np.asarray(omega, dtype=complex).reshape(-1)
    if psi.size != joint.target_dim:
        raise ValueError(f"target state has dim {psi.size}, expected {joint.target_dim}")
    if omega.size != 2:
        raise ValueError("control state must be a single qubit")
    return joint.matrix @ np.kron(psi, omega)


def branch_functionals(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient pairs contracted against the ancilla, one per branch.

    The plus branch pairs the ancilla with (cos(theta/2), i sin(theta/2)),
    the minus branch with (i sin(theta/2), cos(theta/2)); these are the
    unconjugated basis coefficients, i.e. a measurement in the
    complex-conjugate basis.
    """
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    return (np.array([c, 1j * s], dtype=complex),
            np.array([1j * s, c], dtype=complex))


def measure_ancilla(state: np.ndarray,
                    theta: float) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """Measure the last qubit in the theta basis; return both branches.

    The input must be normalized; branch probabilities then sum to 1. A
    zero-probability branch is reported with probability 0 and no post-state.
    """
    state = require_normalized(state)
    if state_num_qubits(state) < 1:
        raise ValueError("state has no qubit to measure")
    psi = state.reshape(-1, 2)
    outcomes = []
    for branch, f in zip(("plus", "minus"), branch_functionals(theta)):
        amp = psi @ f
        prob = float(np.vdot(amp, amp).real)
        if prob <= ZERO_BRANCH_ATOL:
            outcomes.append(MeasurementOutcome(branch, 0.0, None))
        else:
            outcomes.append(MeasurementOutcome(branch, prob, amp / np.sqrt(prob)))
    return outcomes[0], outcomes[1]


def branch_gates(a: np.ndarray, b: np.ndarray,
                 theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Effective target operators after measuring the control at angle theta.

    S_plus = cos(theta/2) A B + i sin(theta/2) B A and S_minus with the
    coefficients swapped. They satisfy
    S_plus^dag S_plus + S_minus^dag S_minus = 2 I.
    """
    a = require_unitary(a, "a")
    b = require_unitary(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    ab = a @ b
    ba = b @ a
    return c * ab + 1j * s * ba, 1j * s * ab + c * ba


def branch_gates_tensor(a_list, b_list, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Branch operators for wire-by-wire single-qubit gate pairs.

    With A = A_1 (x) ... (x) A_N and B likewise,
    S_plus = cos(theta/2) (x)_i A_i B_i + i sin(theta/2) (x)_i B_i A_i,
    built directly from the 2x2 factors.
    """
    a_list = [require_unitary(a, "a factor") for a in a_list]
    b_list = [require_unitary(b, "b factor") for b in b_list]
    if not a_list or len(a_list) != len(b_list):
        raise ValueError("factor lists must be non-empty and the same length")
    for m in (*a_list, *b_list):
        if m.shape != (2, 2):
            raise ValueError("factors must be single-qubit gates")
    ab = tensor(*[a @ b for a, b in zip(a_list, b_list)])
    ba = tensor(*[b @ a for a, b in zip(a_list, b_list)])
    c = np.cos(0.5 * theta)
    s = np.sin(0.5 * theta)
    return c * ab + 1j * s * ba, 1j * s * ab + c * ba


def _four_term_map(ops_a, ops_b, rho: np.ndarray, omega: np.ndarray) -> np.ndarray:
    # Anticommutator/commutator form of the two-switch supermap; linear in
    # rho, so it also serves for Choi construction on matrix units.
    out = np.zeros((rho.shape[0] * 2,) * 2, dtype=complex)
    omega_z = omega @ Z
    z_omega = Z @ omega
    z_omega_z = Z @ omega @ Z
    for ai in ops_a:
        for bj in ops_b:
            anti = ai @ bj + bj @ ai
            comm = ai @ bj - bj @ ai
            out += tensor(anti @ rho @ dagger(anti), omega)
            out += tensor(anti @ rho @ dagger(comm), omega_z)
            out += tensor(comm @ rho @ dagger(anti), z_omega)
            out += tensor(comm @ rho @ dagger(comm), z_omega_z)
    return 0.25 * out


def switch_channel(chan_a: KrausChannel, chan_b: KrausChannel, rho: np.ndarray,
                   omega: np.ndarray) -> np.ndarray:
    """Two noisy operations in superposed orders; output on target (x) control.

    Computed in the anticommutator/commutator form: for each Kraus pair the
    four terms {A,B} rho {A,B}^dag (x) omega, {A,B} rho [A,B]^dag (x) omega Z,
    [A,B] rho {A,B}^dag (x) Z omega, and [A,B] rho [A,B]^dag (x) Z omega Z,
    summed with weight 1/4. Trace preserving and completely positive.
    """
    rho = require_density(rho, "rho")
    omega = require_density(omega, "omega")
    if chan_a.dim != rho.shape[0] or chan_b.dim != rho.shape[0]:
        raise ValueError("channel dimensions must match rho")
    if omega.shape != (2, 2):
        raise ValueError("control omega must be a qubit state")
    return _four_term_map(chan_a.operators, chan_b.operators, rho, omega)


def uniform_control_state(num_orders: int) -> np.ndarray:
    """Pure uniform superposition over num_orders control basis states."""
    u = np.full(num_orders, 1.0 / np.sqrt(num_orders), dtype=complex)
    return np.outer(u, u.conj())


def switch_channel_n(channels, rho: np.ndarray,
                     omega: np.ndarray | None = None) -> np.ndarray:
    """N operations in a superposition of all N! orderings (1 <= N <= 4).

    The control has dimension N!; basis state |k> applies the k-th
    permutation in lexicographic order, with |0> the identity ordering
    (product read left to right). Kraus operators of the joint map are
    K = sum_k perm_k(A^(1)_{i_1} ... A^(N)_{i_N}) (x) |k><k|. When omega is
    omitted it defaults to the uniform superposition over all orders.
    """
    channels = list(channels)
    n = len(channels)
    if not 1 <= n <= 4:
        raise ValueError(f"need between 1 and 4 operations, got {n}")
    dim = channels[0].dim
    if any(ch.dim != dim for ch in channels):
        raise ValueError("all channels must share the target dimension")
    rho = require_density(rho, "rho")
    if rho.shape[0] != dim:
        raise ValueError("rho dimension must match the channels")
    orders = list(permutations(range(n)))
    if omega is None:
        omega = uniform_control_state(len(orders))
    omega = require_density(omega, "omega")
    if omega.shape[0] != len(orders):
        raise ValueError(f"control omega must have dimension {len(orders)}")

    joint_in = tensor(rho, omega)
    out = np.zeros_like(joint_in)
    for combo in product(*[range(ch.rank) for ch in channels]):
        kraus = np.zeros((dim * len(orders),) * 2, dtype=complex)
        for k, order in enumerate(orders):
            prod_ = np.eye(dim, dtype=complex)
            for wire in order:
                prod_ = prod_ @ channels[wire].operators[combo[wire]]
            marker = np.zeros((len(orders),) * 2, dtype=complex)
            marker[k, k] = 1.0
            kraus += tensor(prod_, marker)
        out += kraus @ joint_in @ dagger(kraus)
    return out


def choi_matrix(apply_map, input_dim: int) -> np.ndarray:
    """Choi matrix sum_ij |i><j| (x) map(|i><j|) of a linear matrix map.

    The map is completely positive exactly when the result is positive
    semidefinite.
    """
    choi = None
    for i in range(input_dim):
        for j in range(input_dim):
            unit = np.zeros((input_dim, input_dim), dtype=complex)
            unit[i, j] = 1.0
            block = tensor(unit, np.asarray(apply_map(unit), dtype=complex))
            choi = block if choi is None else choi + block
    return choi

"""A CNOT with no entangling gate in sight.

Every gate placed on the wires is a product of single-qubit factors. The
only two-qubit ingredient is the order ambiguity itself: running A and B in
superposition of both sequences, then measuring the order qubit, leaves a
CNOT on the pair for either measurement outcome.
"""

import numpy as np

from switchsynth import (
    PLUS,
    apply_switch,
    basis_state,
    cu_matrix,
    distance_up_to_phase,
    measure_ancilla,
    operator_schmidt_rank,
    preset,
    switch_unitary,
    synthesize,
)

np.set_printoptions(precision=4, suppress=True, linewidth=120)

CNOT = cu_matrix(preset("cnot"))

plan = synthesize(preset("cnot"))
print("plan angles: theta =", plan.spec.theta, " alpha =", plan.spec.alpha)
print("pre  =\n", plan.pre.real)
print("A    =\n", plan.gate_a.real)
print("B    =\n", plan.gate_b)

# each piece is a tensor product of one-qubit gates: Schmidt rank 1
for name, gate in [("pre", plan.pre), ("A", plan.gate_a), ("B", plan.gate_b),
                   ("F+", plan.post_plus), ("F-", plan.post_minus)]:
    print(f"operator Schmidt rank of {name}: {operator_schmidt_rank(gate)}")
print("operator Schmidt rank of CNOT:", operator_schmidt_rank(CNOT))

# now run the whole pipeline on each computational basis state
joint = switch_unitary(plan.gate_a, plan.gate_b)
print("\nper-branch action on the computational basis:")
for k in range(4):
    state = apply_switch(joint, plan.pre @ basis_state(2, k), PLUS)
    plus, minus = measure_ancilla(state, plan.spec.theta)
    out_plus = plan.post_plus @ plus.post_state
    out_minus = plan.post_minus @ minus.post_state
    want = CNOT[:, k]
    print(f"  |{k:02b}>  p+={plus.probability:.3f}  "
          f"plus -> {out_plus.real}  minus -> {out_minus.real}  "
          f"target {want.real}")

# the reconstruction is exact including global phase, on both branches
s_plus, s_minus = plan.branch_operators()
for branch, post, mid in [("plus", plan.post_plus, s_plus),
                          ("minus", plan.post_minus, s_minus)]:
    gate = post @ mid @ plan.pre
    print(f"{branch}: |F S P - CNOT| = {np.linalg.norm(gate - CNOT):.2e}")

# same story for CZ
plan_cz = synthesize(preset("cz"))
cz = np.diag([1, 1, 1, -1]).astype(complex)
cz_plus, cz_minus = plan_cz.branch_operators()
err = max(distance_up_to_phase(plan_cz.post_plus @ cz_plus @ plan_cz.pre, cz),
          distance_up_to_phase(plan_cz.post_minus @ cz_minus @ plan_cz.pre, cz))
print("cz reconstruction distance (phase free):", f"{err:.2e}")

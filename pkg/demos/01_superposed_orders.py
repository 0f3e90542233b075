"""Two gates, one qubit, both orders at once.

The joint gate applies A then B when the control qubit is |0> and B then A
when it is |1>. With the control in |+> the two orderings interfere, and a
tunable measurement of the control picks out effective branch operators on
the target.
"""

import numpy as np

from switchsynth import (
    PLUS,
    X,
    Z,
    apply_switch,
    basis_state,
    branch_gates,
    dagger,
    measure_ancilla,
    switch_unitary,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)

# X and Z anticommute, so the two orderings differ by a sign
joint = switch_unitary(X, Z)
print("joint gate for (A, B) = (X, Z), target (x) control:")
print(joint.matrix.real)

# run on |0> (x) |+>: the result entangles the order with the target
state = apply_switch(joint, basis_state(1, 0), PLUS)
print("\nS (|0> (x) |+>) =", state)
print("amplitudes sit on |1>(x)|0> and |1>(x)|1>: X Z|0> = |1>, Z X|0> = -|1>")

# measuring the control at theta = 0 asks 'which order happened'
plus, minus = measure_ancilla(state, theta=0.0)
print("\ntheta = 0 measurement:")
for outcome in (plus, minus):
    print(f"  {outcome.branch}: probability {outcome.probability:.4f}, "
          f"post state {outcome.post_state}")

# at other angles each branch applies a blend of the two orderings
for theta in (np.pi / 3, np.pi / 2):
    s_plus, s_minus = branch_gates(X, Z, theta)
    plus, minus = measure_ancilla(state, theta)
    print(f"\ntheta = {theta:.4f}")
    print("  S_plus  =\n", s_plus)
    print("  S_minus =\n", s_minus)
    print(f"  probabilities: {plus.probability:.4f} / {minus.probability:.4f}")
    # the two branch operators always resolve the identity twice over
    total = dagger(s_plus) @ s_plus + dagger(s_minus) @ s_minus
    print("  S+^ S+ + S-^ S- - 2I residual:",
          f"{np.linalg.norm(total - 2 * np.eye(2)):.2e}")

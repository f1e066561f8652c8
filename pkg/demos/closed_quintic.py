"""
Closed mirror symmetry for the quintic
======================================

Frobenius periods of the quintic Picard-Fuchs operator, the mirror map, the
Yukawa coupling and the instanton numbers, all in exact rational arithmetic.
"""

from hodgemirror import (closed_pipeline, frobenius_mum_basis, limiting_period_matrix,
                         monodromy_matrices, quintic_operator)

# the operator theta^4 - 5z (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4)
op = quintic_operator()
print("theta coefficients:", [[str(c) for c in p] for p in op.theta_coeffs])

# periods around the point of maximal unipotent monodromy, modulo z^10
basis = frobenius_mum_basis(op, 10)
print("w0 =", basis[0].truncate(4))

# mirror map, normalized three-point function and invariants
data = closed_pipeline(op, kappa=5, a=50, b=-200, basis=basis)
print("z(q) =", data.mirror.z_of_q.truncate(4))
print("Yukawa:", ", ".join(str(c) for c in data.yukawa.coefficients(5)))
print("instanton numbers:", ", ".join(str(n) for n in data.instantons[:5]))

# integral monodromy at large radius and the limiting period matrix
mono = monodromy_matrices(5, 50)
print("M =", [[str(x) for x in row] for row in mono.M])
for row in limiting_period_matrix(5, 50, -200):
    print("   ", "  ".join(str(c) for c in row))

"""
Open strings on the real quintic
================================

The two flat bundles on the real locus give two superpotentials.  Their
difference is a domain wall tension whose B-model counterpart solves an
inhomogeneous Picard-Fuchs equation.
"""

from fractions import Fraction

from hodgemirror import (abel_jacobi_limit, apply_operator, closed_pipeline, domain_wall,
                         extended_monodromy, frobenius_mum_basis, infinitesimal_invariant,
                         monodromy_matrices, open_potential_q, quintic_operator,
                         real_quintic_tau, superpotential, superpotential_decompose)
from hodgemirror.extension import b_brane_tension

op = quintic_operator()
basis = frobenius_mum_basis(op, 8)
data = closed_pipeline(op, 5, 50, -200, basis)

# tau(z) = 2 sum_{d odd} (5d)!!/(d!!)^5 z^(d/2), divided by w0 and pulled back to q
tau = real_quintic_tau(8)
psi = open_potential_q(tau, basis[0], data.mirror)
half = Fraction(1, 2)
print("Psi_h:", ", ".join(str(c) for c in psi.coefficients(3, half, 1)))

w_plus = superpotential(1, 0, 0, 2, psi)
w_minus = superpotential(1, -1, Fraction(1, 4), 2, psi, -1)
for name, w in (("W+", w_plus), ("W-", w_minus)):
    dec = superpotential_decompose(w, 2, psi)
    print(name, "lambda =", dec.lam, " s mod 2 =", dec.s_mod_r, " c =", dec.c, " xi =", dec.xi)

T = domain_wall(w_plus, w_minus)
print("infinitesimal invariant:",
      ", ".join(str(c) for c in infinitesimal_invariant(T).coefficients(3, half, 1)))
sr, c = abel_jacobi_limit(superpotential_decompose(T, 2))
print(f"Abel-Jacobi limit: ({sr}, {c})")

# the B-brane tension is annihilated up to a single sqrt(z) term
print("D(T_B) =", apply_operator(op, b_brane_tension(basis[0], basis[1], tau)))

ext = extended_monodromy(monodromy_matrices(5, 50).N, 2, [(1, 0), (1, -1)])
for row in ext.matrix:
    print("   ", "  ".join(f"{str(x):>6}" for x in row))

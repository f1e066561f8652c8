"""
Flatness and the (Open) WDVV equations
======================================

The curvature of the extended Dubrovin connection is computed from the
connection matrices, and compared with the WDVV and Open WDVV residuals, which
are computed directly from third derivatives of the potentials.
"""

import itertools
import random
from fractions import Fraction

from hodgemirror.quantum import (OpenPotential, PairingMatrix, Potential, QSeries, curvature,
                                 dubrovin_connection, is_flat, open_wdvv_residual, wdvv_residual)

# quantum cohomology of the projective line: Phi = t0^2 t1 / 2 + q1
kappa = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
for p in itertools.permutations((0, 0, 1)):
    kappa[p[0]][p[1]][p[2]] = 1
Q = PairingMatrix([[0, 1], [1, 0]])
phi = Potential(2, kappa, QSeries(2, {(0, 1): 1}, 5))
print("P^1 flat:", is_flat(dubrovin_connection(phi, [], Q)))

# a random potential: curvature is nonzero and equals the residuals entry by entry
rng = random.Random(1)
phi = Potential(2, kappa, QSeries(2, {(1, 1): rng.randint(1, 5), (2, 0): 1}, 5))
psi = OpenPotential(2, [[0, 1], [1, 0]], QSeries(2, {(Fraction(1, 2), 0): 3}, 5))
R = curvature(dubrovin_connection(phi, [psi], Q))[(0, 1)]
W = wdvv_residual(phi, Q)
O = open_wdvv_residual(phi, [psi], Q)
print("flat:", is_flat(dubrovin_connection(phi, [psi], Q)))

# with Q = [[0, 1], [1, 0]], row m of R_01 pairs with e_(1-m)
for k, l in itertools.product(range(2), repeat=2):
    if not W[(k, 1, 0, l)].is_zero():
        print(f"R_01[{1 - l}][{k}] = {R[1 - l][k]}")
        print(f"  WDVV residual ({k}, 1, 0, {l}) = {W[(k, 1, 0, l)]}")
for l in range(2):
    print(f"R_01[{1 - l}][f] = {R[1 - l][2]}")
    print(f"  Open WDVV residual (0, {l}, 1) = {O[(0, l, 1, 0)]}")

"""Random data generators shared by the property tests."""

import itertools
import random
from fractions import Fraction

from hodgemirror.quantum import OpenPotential, PairingMatrix, Potential, QSeries
from hodgemirror.series import PuiseuxLogSeries


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_series(rng: random.Random, order=6, cover=1, logs=0, unit=False, valuation=0):
    terms = {}
    for k in range(valuation * cover, order * cover):
        for j in range(logs + 1):
            if rng.random() < 0.6:
                terms[(Fraction(k, cover), j)] = random_rational(rng)
    if unit:
        terms[(0, 0)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
        for j in range(1, logs + 1):
            terms.pop((0, j), None)
    return PuiseuxLogSeries(terms, order, cover)


def random_symmetric_cubic(rng: random.Random, n: int):
    k = [[[0] * n for _ in range(n)] for _ in range(n)]
    for c in itertools.combinations_with_replacement(range(n), 3):
        v = rng.randint(-2, 2)
        for p in itertools.permutations(c):
            k[p[0]][p[1]][p[2]] = v
    return k


def random_pairing(rng: random.Random, n: int, symmetric: bool = True) -> PairingMatrix:
    while True:
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if symmetric:
            m = [[m[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        try:
            return PairingMatrix(m)
        except ValueError:
            continue


def random_qseries(rng: random.Random, n: int, order: int, terms: int = 4, half: bool = False):
    out = {}
    for _ in range(terms):
        e = tuple(Fraction(rng.randint(0, 3), 2) if half else Fraction(rng.randint(0, 2))
                  for _ in range(n))
        if 0 < sum(e) < order:
            out[e] = out.get(e, 0) + rng.randint(-3, 3)
    return QSeries(n, out, order)


def random_potential(rng: random.Random, n: int, order: int = 4) -> Potential:
    return Potential(n, random_symmetric_cubic(rng, n), random_qseries(rng, n, order))


def random_open_potential(rng: random.Random, n: int, order: int = 4) -> OpenPotential:
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            lam[i][j] = lam[j][i] = rng.randint(-2, 2)
    return OpenPotential(n, lam, random_qseries(rng, n, order, terms=3, half=True))


def one_direction_family(rng: random.Random, n: int, order: int = 4):
    """Potentials depending on ``t_1`` alone with the pairing ``Q_01 = 1``.

    With a pairing that couples ``e_0`` only to ``e_1`` every WDVV and Open WDVV
    contraction involves ``Phi_1..`` entries that vanish, so these are flat.
    """
    kappa = [[[0] * n for _ in range(n)] for _ in range(n)]
    kappa[1][1][1] = rng.randint(-3, 3)
    phi = QSeries(n, {tuple(Fraction(d if i == 1 else 0) for i in range(n)): rng.randint(-4, 4)
                      for d in range(1, order)}, order)
    lam = [[0] * n for _ in range(n)]
    lam[1][1] = rng.randint(-2, 2)
    psi = QSeries(n, {tuple(Fraction(d, 2) if i == 1 else Fraction(0) for i in range(n)):
                      rng.randint(-4, 4) for d in range(1, 2 * order - 1)}, order)
    Q = [[0] * n for _ in range(n)]
    Q[0][1] = Q[1][0] = 1
    for i in range(2, n):
        Q[i][i] = 1
    return Potential(n, kappa, phi), [OpenPotential(n, lam, psi)], PairingMatrix(Q)

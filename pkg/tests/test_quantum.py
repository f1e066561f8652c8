import itertools
import random
from fractions import Fraction

import pytest

from helpers import (one_direction_family, random_open_potential, random_pairing,
                     random_potential)
from hodgemirror.quantum import (OpenPotential, PairingMatrix, Potential, QSeries,
                                 apply_connection, curvature, dubrovin_connection, flat_sections,
                                 is_flat, open_wdvv_residual, rank1_connection, wdvv_residual)
from hodgemirror.series import PuiseuxLogSeries as S


def mapped_curvature(R, Q, n):
    """``sum_m R_ij[m][k] Q_ml`` keyed like the WDVV residual ``(k, j, i, l)``."""
    out = {}
    for (i, j), Rm in R.items():
        for k, l in itertools.product(range(n), repeat=2):
            acc = QSeries(n)
            for m in range(n):
                if Q.Q[m][l]:
                    acc = acc + Rm[m][k].scale(Q.Q[m][l])
            out[(k, j, i, l)] = acc
    return out


def mapped_open_curvature(R, Q, n, count):
    out = {}
    for (i, j), Rm in R.items():
        for kk, l in itertools.product(range(count), range(n)):
            acc = QSeries(n)
            for b in range(n):
                if Q.Q[b][l]:
                    acc = acc + Rm[b][n + kk].scale(Q.Q[b][l])
            out[(i, l, j, kk)] = acc
    return out


def test_qseries_basics():
    a = QSeries(2, {(1, 0): 2, (0, 1): 3}, 3)
    b = QSeries(2, {(1, 1): 1}, 3)
    assert (a * b).terms == {}  # total degree 3 is truncated
    assert a.theta(0) == QSeries(2, {(1, 0): 2}, 3)
    assert (a - a).is_zero()
    with pytest.raises(ValueError):
        QSeries(2, {(1,): 1})
    with pytest.raises(ValueError):
        QSeries(1, {(-1,): 1})


def test_rank_one_curvature_vanishes():
    phi = Potential(1, [[[5]]], QSeries(1, {(1,): 2875, (2,): 7}, 4))
    psi = OpenPotential(1, [[1]], QSeries(1, {(Fraction(1, 2),): 30}, 4))
    conn = dubrovin_connection(phi, [psi], PairingMatrix([[1]]))
    assert curvature(conn) == {}
    assert is_flat(conn)
    assert all(x.is_zero() for x in wdvv_residual(phi, PairingMatrix([[1]])).values())
    assert all(x.is_zero() for x in open_wdvv_residual(phi, [psi], PairingMatrix([[1]])).values())


def test_quantum_cohomology_of_projective_line_is_flat():
    # Phi = t0^2 t1 / 2 + q1, pairing with the point class
    k = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    for p in itertools.permutations((0, 0, 1)):
        k[p[0]][p[1]][p[2]] = 1
    phi = Potential(2, k, QSeries(2, {(0, 1): 1, (0, 2): Fraction(1, 8)}, 5))
    Q = PairingMatrix([[0, 1], [1, 0]])
    assert is_flat(dubrovin_connection(phi, [], Q))
    assert all(x.is_zero() for x in wdvv_residual(phi, Q).values())


def test_classical_associative_product_is_flat():
    # cup product on H^*(P^1 x P^1): classical cubic form t0 t1 t2 plus t0^2 t3 / 2 terms
    n = 4
    k = [[[0] * n for _ in range(n)] for _ in range(n)]
    for trip in ((0, 0, 3), (0, 1, 2)):
        for p in itertools.permutations(trip):
            k[p[0]][p[1]][p[2]] = 1
    Q = PairingMatrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    phi = Potential(n, k)
    assert is_flat(dubrovin_connection(phi, [], Q))
    assert all(x.is_zero() for x in wdvv_residual(phi, Q).values())


def test_random_non_wdvv_curvature_equals_residual():
    rng = random.Random(11)
    failures = 0
    for _ in range(8):
        n = rng.choice([2, 3])
        phi = random_potential(rng, n)
        psis = [random_open_potential(rng, n)]
        Q = random_pairing(rng, n)
        R = curvature(dubrovin_connection(phi, psis, Q))
        W = wdvv_residual(phi, Q)
        O = open_wdvv_residual(phi, psis, Q)
        for key, val in mapped_curvature(R, Q, n).items():
            assert (val - W[key]).is_zero()
        for key, val in mapped_open_curvature(R, Q, n, 1).items():
            assert (val - O[key]).is_zero()
        # residuals are antisymmetric in the swapped pair, so i < j covers everything
        for (i, j, k, l), val in W.items():
            assert (val + W[(i, k, j, l)]).is_zero()
        failures += any(not x.is_zero() for x in W.values())
    assert failures > 0


def test_flat_families():
    rng = random.Random(5)
    for n in (2, 3):
        phi, psis, Q = one_direction_family(rng, n)
        assert is_flat(dubrovin_connection(phi, psis, Q))
        assert all(x.is_zero() for x in wdvv_residual(phi, Q).values())
        assert all(x.is_zero() for x in open_wdvv_residual(phi, psis, Q).values())


def test_zero_open_potential_has_zero_residual():
    rng = random.Random(2)
    phi = random_potential(rng, 2)
    Q = random_pairing(rng, 2)
    O = open_wdvv_residual(phi, [OpenPotential(2)], Q)
    assert all(x.is_zero() for x in O.values())


def test_dimension_mismatch():
    phi = Potential(2)
    with pytest.raises(ValueError):
        dubrovin_connection(phi, [], PairingMatrix([[1]]))
    with pytest.raises(ValueError):
        open_wdvv_residual(phi, [OpenPotential(3)], PairingMatrix([[0, 1], [1, 0]]))
    with pytest.raises(ValueError):
        PairingMatrix([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        Potential(2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])


def test_classical_connection_entry():
    A = rank1_connection(5, S.zero(6))
    assert A[2][1].terms == {(0, 0): -5}


def test_quintic_rank_one_connection(quintic_closed, psi_h):
    phi_h = quintic_closed.prepotential_quantum
    A = rank1_connection(5, phi_h, [(Fraction(1, 2), psi_h)])
    assert A[2][1] == -quintic_closed.yukawa
    ext = A[2][4]
    assert ext.coefficient(0) == Fraction(-1, 2)
    assert ext.coefficients(3, Fraction(1, 2), 1) == [Fraction(-15, 2), -3450, -6801570]
    for s in flat_sections(5, phi_h, [(Fraction(1, 2), psi_h)]):
        assert all(x.is_zero() for x in apply_connection(A, s))


def test_classical_flat_sections_are_polynomial():
    for s in flat_sections(5, S.zero(6)):
        for x in s:
            assert all(e == 0 for e in x.exponents())
    A = rank1_connection(5, S.zero(6))
    for s in flat_sections(5, S.zero(6)):
        assert all(x.is_zero() for x in apply_connection(A, s))

from fractions import Fraction

import pytest

from hodgemirror import linalg
from hodgemirror.closed import monodromy_matrices
from hodgemirror.extension import (InconsistentChargeError, OGWTable, abel_jacobi_limit,
                                   b_brane_tension, canonical_representative, domain_wall,
                                   extended_monodromy, infinitesimal_invariant, ogw_axioms_check,
                                   ogw_key, ogw_table_from_ntilde, open_potential_q,
                                   real_quintic_tau, superpotential_decompose,
                                   truncated_normal_functions)
from hodgemirror.picard_fuchs import apply_operator
from hodgemirror.series import FormalConstant, PuiseuxLogSeries as S, theta

HALF = Fraction(1, 2)
N_HAT = [[0, 0, 0, 0, 0, 0],
         [-2, 0, 0, 0, 0, 0],
         [5, 10, 0, 0, 1, 1],
         [Fraction(-25, 3), 5, 2, 0, 0, -1],
         [0, 0, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 0]]
M_HAT = [[1, 0, 0, 0, 0, 0],
         [-1, 1, 0, 0, 0, 0],
         [0, 5, 1, 0, 1, 0],
         [-5, 5, 1, 1, 0, 0],
         [0, 0, 0, 0, 0, 1],
         [0, 0, 0, 0, 1, 0]]


def double_factorial(n):
    return 1 if n <= 1 else n * double_factorial(n - 2)


def test_tau_closed_form():
    tau = real_quintic_tau(6)
    assert tau.coefficient(HALF) == 30
    assert tau.coefficient(Fraction(3, 2)) == Fraction(2 * 2027025, 243)
    assert tau.coefficient(Fraction(3, 2)) == Fraction(50050, 3)
    for d in range(1, 12, 2):
        assert tau.coefficient(Fraction(d, 2)) == Fraction(2 * double_factorial(5 * d),
                                                           double_factorial(d) ** 5)
    assert tau.cover == 2


def test_open_potential(psi_h):
    assert psi_h.coefficients(3, HALF, 1) == [30, Fraction(4600, 3), Fraction(5441256, 5)]
    assert psi_h.coefficient(1) == 0


def test_open_potential_of_zero(quintic_basis, quintic_closed):
    assert open_potential_q(S.zero(6, 2), quintic_basis[0], quintic_closed.mirror).is_zero()


def test_infinitesimal_invariant(psi_h):
    D = infinitesimal_invariant(psi_h.scale(2))
    assert D.coefficients(3, HALF, 1) == [15, 6900, 13603140]
    # term by term: 2 (d/2)^2 nt_d
    for d in range(1, 12, 2):
        e = Fraction(d, 2)
        assert D.coefficient(e) == 2 * e * e * psi_h.coefficient(e)
    assert infinitesimal_invariant(S({(0, 2): Fraction(7, 2)})) == S.constant(7)


def test_decompose_two_vacua(psi_h, superpotentials):
    w_plus, w_minus = superpotentials
    dp = superpotential_decompose(w_plus, 2, psi_h)
    assert (dp.lam, dp.s, dp.c, dp.xi) == (1, 0, FormalConstant(0), 1)
    assert dp.ntilde[:3] == (30, 0, Fraction(4600, 3))
    dm = superpotential_decompose(w_minus, 2, psi_h)
    assert (dm.lam, dm.s_mod_r, dm.c, dm.xi) == (1, 1, FormalConstant(Fraction(1, 4)), -1)
    assert dm.w_series == -psi_h
    assert dm.reassemble() == w_minus
    zero = superpotential_decompose(S.zero(), 2)
    assert (zero.lam, zero.s, zero.c, zero.w_series.is_zero()) == (0, 0, FormalConstant(0), True)


def test_decompose_rejects_inconsistent_charges():
    with pytest.raises(InconsistentChargeError):
        superpotential_decompose(S({(0, 2): Fraction(1, 8)}), 2)
    with pytest.raises(InconsistentChargeError):
        superpotential_decompose(S({(0, 1): Fraction(1, 3)}), 2)
    with pytest.raises(ValueError):
        superpotential_decompose(S({(Fraction(1, 3), 0): 1}), 2)
    with pytest.raises(ValueError):
        superpotential_decompose(S({(1, 1): 1}), 2)


def test_domain_wall(psi_h, superpotentials):
    w_plus, w_minus = superpotentials
    TA = domain_wall(w_plus, w_minus)
    want = S({(0, 1): HALF, (0, 0): Fraction(-1, 4)}) + psi_h.scale(2)
    assert TA == want
    dec = superpotential_decompose(TA, 2)
    assert (dec.lam, dec.s_mod_r, dec.c) == (0, 1, FormalConstant(Fraction(-1, 4)))
    assert abel_jacobi_limit(dec) == (HALF, FormalConstant(Fraction(-1, 4)))
    assert FormalConstant.zeta2_multiple_of(Fraction(-1, 4)) == FormalConstant(zeta2=6)
    assert domain_wall(w_plus, w_plus).is_zero()
    assert abel_jacobi_limit(superpotential_decompose(S.zero(), 2)) == (0, FormalConstant(0))


def test_canonical_representative():
    w = S({(0, 1): Fraction(-3, 2), (0, 0): Fraction(7, 4)})
    c = canonical_representative(w)
    assert c.coefficient(0, 1) == HALF
    assert c.coefficient(0) == Fraction(-1, 4)
    assert canonical_representative(S.constant(HALF)).coefficient(0) == HALF


def test_truncated_normal_functions(psi_h, superpotentials):
    TA = domain_wall(*superpotentials)
    V, W = truncated_normal_functions(superpotential_decompose(TA, 2))
    assert W == TA
    assert V == theta(TA)


def test_b_brane_tension_solves_inhomogeneous_equation(quintic, quintic_basis, real_tau):
    TB = b_brane_tension(quintic_basis[0], quintic_basis[1], real_tau)
    res = apply_operator(quintic, TB)
    assert res.terms == {(HALF, 0): Fraction(15, 4)}
    assert res.order == quintic_basis.order


def test_b_brane_tension_matches_domain_wall(quintic_basis, quintic_closed, superpotentials):
    from hodgemirror.closed import pullback
    TB = b_brane_tension(quintic_basis[0], quintic_basis[1], real_quintic_tau(quintic_basis.order))
    mm = quintic_closed.mirror
    TBq = pullback(TB, mm) / pullback(quintic_basis[0], mm)
    TA = domain_wall(*superpotentials)
    assert TBq.equals_to_order(TA)


def test_extended_monodromy():
    N = monodromy_matrices(5, 50).N
    ext = extended_monodromy(N, 2, [(1, 0), (1, -1)])
    assert ext.matrix == linalg.to_matrix(N_HAT)
    assert linalg.nilpotent_exp(ext.matrix) == linalg.mat_pow(linalg.to_matrix(M_HAT), 2)
    plain = extended_monodromy(N, 2, [])
    assert plain.matrix == linalg.mat_scale(N, 2)
    with pytest.raises(ValueError):
        extended_monodromy(linalg.zeros(3), 2, [])


def test_ogw_table_from_divisor_axiom(psi_h):
    nt = [psi_h.coefficient(Fraction(d, 2)) for d in range(1, 12)]
    table = ogw_table_from_ntilde(nt, 2)
    assert table.entries[ogw_key(HALF, (2, 2))] == Fraction(15, 2)
    assert ogw_axioms_check(table) == []
    with_lam = ogw_table_from_ntilde(nt, 2, lam=Fraction(1, 4))
    assert ogw_axioms_check(with_lam) == []


def test_ogw_violations():
    unit = OGWTable({ogw_key(1, (0, 2)): Fraction(3)})
    assert (ogw_key(1, (0, 2)), "unit") in ogw_axioms_check(unit)
    degree = OGWTable({ogw_key(1, (2, 4)): Fraction(1)})
    assert (ogw_key(1, (2, 4)), "degree") in ogw_axioms_check(degree)
    divisor = OGWTable({ogw_key(2, ()): Fraction(1), ogw_key(2, (2,)): Fraction(3)})
    assert (ogw_key(2, (2,)), "divisor") in ogw_axioms_check(divisor)
    zero = OGWTable({ogw_key(0, (2,)): Fraction(1)})
    assert (ogw_key(0, (2,)), "zero") in ogw_axioms_check(zero)

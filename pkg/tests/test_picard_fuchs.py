from fractions import Fraction
from math import factorial

import pytest

from hodgemirror.picard_fuchs import (PFOperator, apply_operator, frobenius_mum_basis,
                                      hypergeometric_operator, quintic_operator,
                                      solve_inhomogeneous)
from hodgemirror.series import PuiseuxLogSeries as S


def test_quintic_theta_coefficients():
    # 5 z prod(5 theta + k) = 5 z (625 t^4 + 1250 t^3 + 875 t^2 + 250 t + 24)
    op = quintic_operator()
    assert op.theta_coeffs == ((0, -120), (0, -1250), (0, -4375), (0, -6250), (1, -3125))
    assert op.is_mum()
    assert "2 pi i" in op.normalization_note


def test_indicial_polynomial_is_rho_to_the_fourth():
    op = quintic_operator()
    for s in range(-3, 4):
        assert op.indicial(0, Fraction(s)) == Fraction(s) ** 4


def test_apply_to_constant_and_zero():
    op = quintic_operator()
    out = apply_operator(op, S.one(5))
    assert out.coefficients(3) == [0, -120, 0]
    assert apply_operator(op, S.zero(5)).is_zero()


def test_mum_violation_rejected():
    with pytest.raises(ValueError):
        PFOperator(((1,), (0,), (0,), (0,), (1,)))
    with pytest.raises(ValueError):
        PFOperator(((0,), (0,), (0,), (0,), (0, 1)))
    with pytest.raises(ValueError):
        hypergeometric_operator([(5, 1), (5, 2), (5, 3)], 5)
    with pytest.raises(ValueError):
        hypergeometric_operator([], 5)


def test_fundamental_period_oracle(quintic_basis):
    w0 = quintic_basis[0]
    want = [Fraction(factorial(5 * n), factorial(n) ** 5) for n in range(quintic_basis.order)]
    assert w0.coefficients(quintic_basis.order) == want
    assert w0.coefficients(4) == [1, 120, 113400, 168168000]
    assert not w0.has_logs()


def test_basis_is_annihilated(quintic, quintic_basis):
    for k in range(4):
        w = quintic_basis[k]
        assert w.max_log_power == k
        assert apply_operator(quintic, w).is_zero()


def test_frobenius_normalization(quintic_basis):
    w0, w1 = quintic_basis[0], quintic_basis[1]
    hol = w1 - w0 * S.log()
    assert not hol.has_logs()
    assert hol.coefficient(0) == 0
    assert hol.coefficient(1) == 770


def test_other_hypergeometric_family():
    # any four linear factors with unit leading coefficient give a MUM operator
    op = hypergeometric_operator([(6, 1), (3, 1), (3, 2), (6, 5)], 4)
    basis = frobenius_mum_basis(op, 6)
    for k in range(4):
        assert apply_operator(op, basis[k]).is_zero()


def test_inhomogeneous_solution_matches_closed_form(quintic, real_tau):
    rhs = S({(Fraction(1, 2), 0): Fraction(15, 8)}, real_tau.order, 2)
    sol = solve_inhomogeneous(quintic, rhs)
    assert sol == real_tau
    assert sol.coefficient(Fraction(3, 2)) == Fraction(50050, 3)
    assert apply_operator(quintic, sol) == rhs


def test_inhomogeneous_zero_and_resonance(quintic):
    assert solve_inhomogeneous(quintic, S.zero(4)).is_zero()
    with pytest.raises(ValueError):
        solve_inhomogeneous(quintic, S({(0, 0): 1}, 4))
    with pytest.raises(ValueError):
        solve_inhomogeneous(quintic, S({(Fraction(1, 2), 1): 1}, 4))

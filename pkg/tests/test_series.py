from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgemirror.series import (FormalConstant, PuiseuxLogSeries as S, exp_log, exp_series,
                                log_series, rational_root, series_arith, series_compose,
                                series_reverse, theta, theta_antiderivative)

x = S.monomial(1)
L = S.log()

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def series(draw, order=5, cover=st.sampled_from([1, 2]), logs=1, unit=False, positive=False):
    r = draw(cover)
    start = 1 if positive else 0
    terms = {}
    for k in range(start * r, order * r):
        for j in range(logs + 1):
            terms[(Fraction(k, r), j)] = draw(rationals)
    if unit:
        terms[(0, 0)] = draw(rationals.filter(bool))
        for j in range(1, logs + 1):
            terms.pop((0, j), None)
    return S(terms, order, r)


# ---- construction ------------------------------------------------------------------


def test_zero_coefficients_are_not_stored():
    s = S({(0, 0): 1, (1, 0): 0, (2, 1): Fraction(0)})
    assert s.terms == {(Fraction(0), 0): Fraction(1)}


def test_terms_beyond_order_are_dropped():
    s = S({(0, 0): 1, (3, 0): 5}, order=3)
    assert s.terms == {(Fraction(0), 0): Fraction(1)}


def test_cover_is_inferred_and_validated():
    assert S({(Fraction(1, 2), 0): 1}).cover == 2
    with pytest.raises(ValueError):
        S({(Fraction(1, 3), 0): 1}, cover=2)
    with pytest.raises(ValueError):
        S({(1, -1): 1})


def test_rationals_are_in_lowest_terms():
    s = S({(0, 0): Fraction(6, 4)})
    assert s.coefficient(0) == Fraction(3, 2)
    assert s.coefficient(0).denominator == 2


def test_from_coefficients_defaults_order():
    s = S.from_coefficients([1, 2, 3], step=Fraction(1, 2), start=Fraction(1, 2))
    assert s.order == 2
    assert s.coefficients(3, Fraction(1, 2), Fraction(1, 2)) == [1, 2, 3]


# ---- arithmetic examples -----------------------------------------------------------------


def test_difference_of_squares():
    assert (1 + x) * (1 - x) == 1 - x * x


def test_geometric_series():
    s = (1 - x.scale(3125)).truncate(6).reciprocal()
    assert s.coefficients(6) == [3125 ** n for n in range(6)]
    assert s.order == 6


def test_half_powers_multiply_on_cover_two():
    h = S.monomial(Fraction(1, 2))
    assert h * h == x
    assert (h * h).cover == 2


def test_series_arith_dispatch():
    a, b = (1 + x).truncate(4), (1 - x).truncate(4)
    assert series_arith(a, b, "add") == S.constant(2, 4)
    assert series_arith(a, b, "mul") == (1 - x * x).truncate(4)
    assert series_arith(a, b, "div").coefficients(4) == [1, 2, 2, 2]
    with pytest.raises(ValueError):
        series_arith(a, b, "pow")


def test_division_by_vanishing_leading_term_fails():
    with pytest.raises((ZeroDivisionError, ValueError)):
        S.one(4) / S.zero(4)
    with pytest.raises(ValueError):
        S.one(4) / (L + 1).truncate(4)


def test_order_propagates_as_minimum():
    a = S({(0, 0): 1, (1, 0): 2}, order=5)
    b = S({(0, 0): 3}, order=3)
    assert (a + b).order == 3
    assert (a * b).order == 3


def test_division_by_exact_series_keeps_order():
    num = S.from_coefficients([1, 1, 1, 1, 1], order=5)
    assert (num / (1 - x)).coefficients(5) == [1, 2, 3, 4, 5]
    assert (num / (1 - x)).order == 5


def test_power_and_negative_power():
    s = (1 + x).truncate(5)
    assert (s ** 3).coefficients(5) == [1, 3, 3, 1, 0]
    assert (s ** -1).coefficients(5) == [1, -1, 1, -1, 1]


# ---- theta -------------------------------------------------------------------------------


def test_theta_examples():
    assert theta(L) == S.one()
    assert theta(x * x) == x.scale(2) * x
    assert theta(x * L) == x * L + x


def test_theta_antiderivative_inverts_theta():
    s = S.from_coefficients([0, 3, 5, 7], order=4)
    assert theta(theta_antiderivative(s)) == s
    with pytest.raises(ValueError):
        theta_antiderivative(S.constant(1))
    with pytest.raises(ValueError):
        theta_antiderivative(L)


# ---- composition and reversion --------------------------------------------------------------


def test_compose_binomial():
    assert series_compose(x * x, x + x * x) == x * x + (x * x * x).scale(2) + x * x * x * x


def test_compose_log_with_identity():
    assert series_compose(L.truncate(5), x) == L.truncate(5)


def test_compose_rational_function_oracle():
    order = 8
    outer = (1 - x).truncate(order).reciprocal()
    inner = x / (1 + x).truncate(order)
    got = series_compose(outer, inner)
    z = sympy.symbols("z")
    expr = sympy.simplify(1 / (1 - z / (1 + z)))
    want = sympy.series(expr, z, 0, order).removeO()
    assert got.coefficients(order) == [Fraction(str(want.coeff(z, n))) for n in range(order)]
    assert got.coefficients(order) == [1, 1] + [0] * (order - 2)


def test_compose_rejects_bad_inner():
    with pytest.raises(ValueError):
        series_compose(x.truncate(4), (1 + x).truncate(4))
    with pytest.raises(ValueError):
        series_compose(x.truncate(4), (x * L).truncate(4))


def test_compose_half_integer_outer():
    outer = S({(Fraction(1, 2), 0): 1}, order=5)
    got = series_compose(outer, (x + x * x).truncate(6))   # sqrt(x + x^2) = x^(1/2) (1 + x)^(1/2)
    assert got.order == 5
    assert got.coefficients(5, Fraction(1, 2)) == [1, Fraction(1, 2), Fraction(-1, 8),
                                                   Fraction(1, 16), Fraction(-5, 128)]


def test_reverse_examples():
    assert series_reverse(x.truncate(6)) == x.truncate(6)
    rev = series_reverse((x + (x * x).scale(2)).truncate(6))
    assert rev.coefficients(6) == [0, 1, -2, 8, -40, 224]
    assert series_compose((x + (x * x).scale(2)).truncate(6), rev).equals_to_order(x)


def test_reverse_rejects_degenerate_input():
    with pytest.raises(ValueError):
        series_reverse((x * x).truncate(5))
    with pytest.raises(ValueError):
        series_reverse(x)


# ---- exp / log -------------------------------------------------------------------------------


def test_exp_log_examples():
    assert exp_series(S.zero(6)) == S.one(6)
    e = exp_series(x.truncate(7))
    assert e.coefficients(7) == [Fraction(1, factorial(n)) for n in range(7)]
    assert log_series(e) == x.truncate(7)
    assert exp_log(x.truncate(3), "exp") == e.truncate(3)
    with pytest.raises(ValueError):
        exp_log(x.truncate(3), "sin")
    with pytest.raises(ValueError):
        exp_series(S.one(3))


def test_rational_root():
    assert rational_root(Fraction(4, 9), 2) == Fraction(2, 3)
    with pytest.raises(ValueError):
        rational_root(Fraction(2), 2)


# ---- formal constants ------------------------------------------------------------------------


def test_formal_constant_algebra():
    a = FormalConstant(1, 2, 3)
    assert a + a == FormalConstant(2, 4, 6)
    assert a * 2 == FormalConstant(2, 4, 6)
    assert a - a == FormalConstant()
    with pytest.raises(ValueError):
        FormalConstant(zeta3=1) * FormalConstant(zeta2=1)


def test_zeta2_rewriting():
    c = FormalConstant.zeta2_multiple_of(Fraction(-1, 4))
    assert c == FormalConstant(zeta2=6)
    assert c.folded() == FormalConstant(Fraction(-1, 4))


# ---- properties ------------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a + b).equals_to_order(b + a)
    assert (a * b).equals_to_order(b * a)
    assert ((a + b) + c).equals_to_order(a + (b + c))
    assert ((a * b) * c).equals_to_order(a * (b * c))
    assert (a * (b + c)).equals_to_order(a * b + a * c)
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_theta_leibniz(a, b):
    assert theta(a * b).equals_to_order(theta(a) * b + a * theta(b))


@settings(max_examples=30, deadline=None)
@given(series(logs=0, unit=True))
def test_reciprocal_is_inverse(a):
    assert (a * a.reciprocal()).equals_to_order(S.one())


@settings(max_examples=25, deadline=None)
@given(series(logs=0, positive=True, cover=st.just(1)))
def test_exp_log_round_trip(u):
    assert log_series(exp_series(u)).equals_to_order(u)
    assert exp_series(log_series(1 + u)).equals_to_order(1 + u)


@settings(max_examples=25, deadline=None)
@given(series(logs=0, positive=True, cover=st.just(1)))
def test_reverse_round_trip(tail):
    f = (x + tail.shift(1)).truncate(6)
    g = series_reverse(f)
    assert series_compose(f, g).equals_to_order(x)
    assert series_compose(g, f).equals_to_order(x)

"""Order-4 Picard-Fuchs operators and the Frobenius method at a MUM point."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Sequence, Tuple

from .series import PuiseuxLogSeries, as_fraction, theta

Poly = Tuple[Fraction, ...]

DEPTH = 4  # nilpotent depth of eps, eps**4 = 0


def _poly(coeffs: Sequence) -> Poly:
    out = [as_fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PFOperator:
    """``D = sum_i p_i(z) theta**i`` with ``theta_coeffs[i] = p_i`` (ascending in z).

    The physical operator may carry an overall constant such as ``(2 pi i)**2``;
    that factor is irrelevant for solutions and is recorded only in
    ``normalization_note``.
    """

    theta_coeffs: Tuple[Poly, ...]
    normalization_note: str = ""

    def __post_init__(self):
        coeffs = tuple(_poly(p) for p in self.theta_coeffs)
        if len(coeffs) != 5:
            raise ValueError("an order-4 operator needs exactly five theta coefficients")
        object.__setattr__(self, "theta_coeffs", coeffs)
        if not self.is_mum():
            raise ValueError("operator violates the MUM condition "
                             "(need p4(0) != 0 and p_i(0) = 0 for i < 4)")

    def is_mum(self) -> bool:
        c = self.theta_coeffs
        return _at(c[4], 0) != 0 and all(_at(c[i], 0) == 0 for i in range(4))

    @property
    def z_degree(self) -> int:
        return max((len(p) - 1 for p in self.theta_coeffs), default=0)

    def indicial(self, j: int, s: Fraction) -> Fraction:
        """``P_j(s) = sum_i [z**j] p_i * s**i``."""
        return sum((_at(p, j) * s ** i for i, p in enumerate(self.theta_coeffs)), Fraction(0))

    def _indicial_eps(self, j: int, s: Fraction) -> List[Fraction]:
        # P_j(s + eps) in Q[eps]/(eps^4)
        out = [Fraction(0)] * DEPTH
        for i, p in enumerate(self.theta_coeffs):
            a = _at(p, j)
            if a == 0:
                continue
            # (s + eps)^i = sum_k C(i,k) s^(i-k) eps^k
            for k in range(min(i, DEPTH - 1) + 1):
                out[k] += a * _binom(i, k) * s ** (i - k)
        return out

    def coefficient_series(self, i: int) -> PuiseuxLogSeries:
        return PuiseuxLogSeries({(n, 0): c for n, c in enumerate(self.theta_coeffs[i])})


def _at(p: Poly, j: int) -> Fraction:
    return p[j] if 0 <= j < len(p) else Fraction(0)


def _binom(n: int, k: int) -> int:
    return factorial(n) // (factorial(k) * factorial(n - k))


def hypergeometric_operator(factors: Sequence[Sequence[int]], scale) -> PFOperator:
    """``theta**4 - scale * z * prod_k (w_k theta + k_k)`` for four pairs ``(w, k)``."""
    factors = [tuple(f) for f in factors]
    if not factors:
        raise ValueError("need at least one factor")
    if len(factors) != 4:
        raise ValueError("an order-4 operator needs exactly four linear factors")
    scale = as_fraction(scale)
    # expand prod (w theta + k) as a polynomial in theta
    prod = [Fraction(1)]
    for w, k in factors:
        nxt = [Fraction(0)] * (len(prod) + 1)
        for i, c in enumerate(prod):
            nxt[i] += c * k
            nxt[i + 1] += c * w
        prod = nxt
    coeffs = []
    for i in range(5):
        const = Fraction(1) if i == 4 else Fraction(0)
        coeffs.append((const, -scale * prod[i]))
    return PFOperator(tuple(coeffs), "overall (2 pi i)**2 of the geometric operator dropped")


def quintic_operator() -> PFOperator:
    return hypergeometric_operator([(5, 1), (5, 2), (5, 3), (5, 4)], 5)


def apply_operator(op: PFOperator, f: PuiseuxLogSeries) -> PuiseuxLogSeries:
    result = PuiseuxLogSeries.zero(f.order, f.cover)
    g = f
    for i in range(5):
        if i:
            g = theta(g)
        if op.theta_coeffs[i]:
            result = result + op.coefficient_series(i) * g
    return result


# ---- homogeneous Frobenius basis ------------------------------------------------


@dataclass(frozen=True)
class FrobeniusBasis:
    """The MUM solutions ``periods[k]`` with log-degree exactly ``k``."""

    periods: Tuple[PuiseuxLogSeries, ...]
    order: int
    eps_coefficients: Tuple[Tuple[Fraction, ...], ...] = field(repr=False, default=())

    def __getitem__(self, k: int) -> PuiseuxLogSeries:
        return self.periods[k]

    def __len__(self):
        return len(self.periods)


def _eps_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * DEPTH
    for i, x in enumerate(a):
        if x:
            for j in range(DEPTH - i):
                out[i + j] += x * b[j]
    return out


def _eps_inv(a: List[Fraction]) -> List[Fraction]:
    if a[0] == 0:
        raise ZeroDivisionError("non-unit in Q[eps]/(eps^4)")
    inv0 = 1 / a[0]
    n = [-x * inv0 for x in a]
    n[0] = Fraction(0)
    # 1/(a0 (1 - n)) = (1 + n + n^2 + n^3)/a0
    out = [Fraction(1)] + [Fraction(0)] * (DEPTH - 1)
    p = list(out)
    for _ in range(DEPTH - 1):
        p = _eps_mul(p, n)
        out = [x + y for x, y in zip(out, p)]
    return [x * inv0 for x in out]


def frobenius_mum_basis(op: PFOperator, order: int) -> FrobeniusBasis:
    """Solutions of ``D f = 0`` modulo ``z**order`` via the ansatz ``z**eps sum c_n(eps) z**n``."""
    if not op.is_mum():
        raise ValueError("operator is not MUM")
    order = int(order)
    if order < 1:
        raise ValueError("order must be positive")
    width = op.z_degree
    cs: List[List[Fraction]] = [[Fraction(1)] + [Fraction(0)] * (DEPTH - 1)]
    for m in range(1, order):
        acc = [Fraction(0)] * DEPTH
        for j in range(1, min(width, m) + 1):
            pj = op._indicial_eps(j, Fraction(m - j))
            if any(pj):
                prod = _eps_mul(pj, cs[m - j])
                acc = [x - y for x, y in zip(acc, prod)]
        cs.append(_eps_mul(acc, _eps_inv(op._indicial_eps(0, Fraction(m)))))
    periods = []
    for k in range(DEPTH):
        terms = {}
        for j in range(k + 1):
            w = Fraction(1, factorial(j))
            for n, c in enumerate(cs):
                if c[k - j]:
                    terms[(n, j)] = c[k - j] * w
        periods.append(PuiseuxLogSeries(terms, order))
    return FrobeniusBasis(tuple(periods), order, tuple(tuple(c) for c in cs))


# ---- inhomogeneous solutions ------------------------------------------------------


def solve_inhomogeneous(op: PFOperator, rhs: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Log-free particular solution of ``D f = rhs`` on the exponent lattice of ``rhs``."""
    if rhs.has_logs():
        raise ValueError("right-hand side must be log free")
    if rhs.is_zero():
        return PuiseuxLogSeries.zero(rhs.order, rhs.cover)
    if rhs.order is None:
        raise ValueError("right-hand side needs a truncation order")
    width = op.z_degree
    # one residue class of exponents modulo 1 at a time
    classes = {}
    for e in rhs.exponents():
        base = e - (e.numerator // e.denominator)
        classes[base] = min(classes.get(base, e), e)
    sol = {}
    for base, start in classes.items():
        e = start
        while e < rhs.order:
            p0 = op.indicial(0, e)
            if p0 == 0:
                raise ValueError(f"resonant exponent {e}: coincides with an indicial root")
            acc = rhs.coefficient(e)
            for j in range(1, width + 1):
                prev = sol.get(e - j)
                if prev:
                    acc -= op.indicial(j, e - j) * prev
            if acc:
                sol[e] = acc / p0
            e += 1
    return PuiseuxLogSeries({(e, 0): c for e, c in sol.items()}, rhs.order, rhs.cover)

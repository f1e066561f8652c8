"""Closed-string mirror data: mirror map, Yukawa coupling, prepotential,
instanton numbers, integral monodromy and limiting periods.

Coordinates are ordered ``(e3, e2, e1, e0)`` for the Hodge basis and
``(g3, g2, g1, g0)`` for the integral flat basis.  In q-series the formal
log ``L`` stands for the flat coordinate ``t = log(q)/(2 pi i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .picard_fuchs import FrobeniusBasis, PFOperator
from .series import (FormalConstant, PuiseuxLogSeries, exp_series, series_compose,
                     series_reverse, theta, theta_antiderivative)

S = PuiseuxLogSeries

POLARIZATION = linalg.to_matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])


# ---- mirror map ----------------------------------------------------------------


@dataclass(frozen=True)
class MirrorMap:
    t_of_z: PuiseuxLogSeries   # L + holomorphic, L = log z
    q_of_z: PuiseuxLogSeries
    z_of_q: PuiseuxLogSeries

    @property
    def order(self):
        return self.z_of_q.order


def mirror_map(basis: FrobeniusBasis) -> MirrorMap:
    w0, w1 = basis[0], basis[1]
    t = w1 / w0
    if t.coefficient(0, 1) != 1 or t.max_log_power != 1:
        raise ValueError("second period is not of the form w0 log z + holomorphic")
    hol = t.log_part(0)
    q = exp_series(hol).shift(1)
    return MirrorMap(t, q, series_reverse(q))


def pullback(f: PuiseuxLogSeries, mm: MirrorMap) -> PuiseuxLogSeries:
    """Express a z-series in the canonical coordinate q."""
    return series_compose(f, mm.z_of_q)


# ---- Yukawa coupling ------------------------------------------------------------


def yukawa_z(op: PFOperator, kappa, order) -> PuiseuxLogSeries:
    """``Y(z)`` solving ``theta log Y = -p3/(2 p4)`` with ``Y(0) = kappa``."""
    p3 = op.coefficient_series(3).truncate(order)
    p4 = op.coefficient_series(4)
    rhs = (p3 / p4).scale(Fraction(-1, 2))
    return exp_series(theta_antiderivative(rhs)).scale(Fraction(kappa))


def yukawa_coupling(op: PFOperator, kappa, mm: MirrorMap, w0: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Normalized three-point function ``C(q)``."""
    order = mm.order
    y = pullback(yukawa_z(op, kappa, order), mm)
    w0q = pullback(w0, mm)
    z = mm.z_of_q
    jac = theta(z) / z
    return (y / (w0q * w0q) * jac * jac * jac).truncate(order)


# ---- prepotential and invariants ---------------------------------------------------


def classical_prepotential(kappa, a) -> PuiseuxLogSeries:
    """``kappa/6 t^3 + kappa/4 t^2 - a/24 t``."""
    kappa, a = Fraction(kappa), Fraction(a)
    return S({(0, 3): kappa / 6, (0, 2): kappa / 4, (0, 1): -a / 24})


def prepotential_recover(C: PuiseuxLogSeries, kappa, a) -> Tuple[PuiseuxLogSeries, PuiseuxLogSeries]:
    """Split ``F`` into its log polynomial and the quantum part ``f(q)`` with ``theta^3 f = C - kappa``."""
    if C.coefficient(0) != Fraction(kappa):
        raise ValueError("constant term of the Yukawa coupling must equal kappa")
    f = C - Fraction(kappa)
    for _ in range(3):
        f = theta_antiderivative(f)
    return classical_prepotential(kappa, a), f


def ntilde_from_yukawa(C: PuiseuxLogSeries, count: int) -> List[Fraction]:
    return [C.coefficient(d) / d ** 3 for d in range(1, count + 1)]


def instanton_invert(ntilde: Sequence) -> List[Fraction]:
    """Multicover inversion ``N_d = Nt_d - sum_{k | d, k > 1} N_{d/k} / k^3``."""
    out: List[Fraction] = []
    for d in range(1, len(ntilde) + 1):
        val = Fraction(ntilde[d - 1])
        for k in range(2, d + 1):
            if d % k == 0:
                val -= out[d // k - 1] / k ** 3
        out.append(val)
    return out


def multicover_sum(n_inst: Sequence) -> List[Fraction]:
    """Inverse of :func:`instanton_invert`."""
    count = len(n_inst)
    out = [Fraction(0)] * count
    for d in range(1, count + 1):
        for k in range(1, count // d + 1):
            out[d * k - 1] += Fraction(n_inst[d - 1]) / k ** 3
    return out


@dataclass(frozen=True)
class ClosedMirrorData:
    kappa: int
    a: int
    b: int
    basis: FrobeniusBasis = field(repr=False)
    mirror: MirrorMap = field(repr=False)
    yukawa: PuiseuxLogSeries = field(repr=False)
    prepotential_quantum: PuiseuxLogSeries = field(repr=False)
    ntilde: Tuple[Fraction, ...] = ()
    instantons: Tuple[Fraction, ...] = ()


def closed_pipeline(op: PFOperator, kappa, a, b, basis: FrobeniusBasis) -> ClosedMirrorData:
    mm = mirror_map(basis)
    C = yukawa_coupling(op, kappa, mm, basis[0])
    _, f = prepotential_recover(C, kappa, a)
    count = int(C.order) - 1 if C.order is not None else 0
    nt = ntilde_from_yukawa(C, count)
    return ClosedMirrorData(kappa, a, b, basis, mm, C, f, tuple(nt), tuple(instanton_invert(nt)))


# ---- monodromy -------------------------------------------------------------------


@dataclass(frozen=True)
class IntegralMonodromy:
    M: List[List[Fraction]]
    N: List[List[Fraction]]

    def __post_init__(self):
        if linalg.nilpotent_exp(self.N) != self.M:
            raise ValueError("exp(N) != M")
        if linalg.nilpotency_index(self.N) != 4:
            raise ValueError("monodromy logarithm is not maximally unipotent")
        mt = linalg.transpose(self.M)
        if linalg.mat_mul(linalg.mat_mul(mt, POLARIZATION), self.M) != POLARIZATION:
            raise ValueError("monodromy does not preserve the polarization")


def monodromy_matrices(kappa, a) -> IntegralMonodromy:
    k, a = Fraction(kappa), Fraction(a)
    M = [[1, 0, 0, 0], [-1, 1, 0, 0], [0, k, 1, 0], [-(a + 2 * k) / 12, k, 1, 1]]
    N = [[0, 0, 0, 0], [-1, 0, 0, 0], [k / 2, k, 0, 0], [-a / 12, k / 2, 1, 0]]
    return IntegralMonodromy(linalg.to_matrix(M), linalg.to_matrix(N))


# ---- flat and limiting periods ---------------------------------------------------


def flat_period_matrix(kappa, a, f: PuiseuxLogSeries) -> List[List[PuiseuxLogSeries]]:
    """Coordinates of ``(g3, g2, g1, g0)`` (rows) in the Hodge basis ``(e3, e2, e1, e0)``.

    The rational part of the prepotential constant is omitted; transcendental
    constants enter only through :func:`limiting_period_matrix`.
    """
    F = classical_prepotential(kappa, a) + f
    t = S.log()
    d1, d2 = theta(F), theta(F, 2)
    zero, one = S.zero(), S.one()
    return [
        [one, -t, d1 - t * d2, F.scale(2) - t * d1],
        [zero, one, d2, d1],
        [zero, zero, one, t],
        [zero, zero, zero, one],
    ]


def untwist(rows: List[List[PuiseuxLogSeries]], N) -> List[List[PuiseuxLogSeries]]:
    """``exp(-t N^T) G``: removes the multivalued part of a flat period matrix."""
    n = len(rows)
    t = S.log()
    acc = [list(r) for r in rows]
    term = [list(r) for r in rows]
    nt = linalg.transpose(N)
    for k in range(1, n + 1):
        # term <- (-t/k) N^T term
        new = []
        for i in range(n):
            row = []
            for j in range(len(rows[0])):
                s = S.zero()
                for m in range(n):
                    if nt[i][m]:
                        s = s + term[m][j].scale(nt[i][m])
                row.append(s * t.scale(Fraction(-1, k)))
            new.append(row)
        term = new
        acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, term)]
    return acc


def pairing_with_hodge(coords: Sequence) -> List:
    """``(Q(g, e3), Q(g, e2), Q(g, e1), Q(g, e0))`` from Hodge coordinates of ``g``."""
    return [sum((c * POLARIZATION[k][j] for k, c in enumerate(coords) if POLARIZATION[k][j]),
                FormalConstant() if isinstance(coords[0], FormalConstant) else 0)
            for j in range(4)]


def limiting_period_matrix(kappa, a, b, extension_rows: Optional[Sequence[Tuple]] = None
                           ) -> List[List[FormalConstant]]:
    """``Q(g~_i(0), e_j)``, rows ``i = 0..3`` (then extension rows), columns ``e3, e2, e1, e0``.

    Each extension row is ``(s/r, c)`` and contributes ``(c, s/r, 0, 0)``.
    """
    k, a = Fraction(kappa), Fraction(a)
    Fc = FormalConstant
    rows = [
        [Fc(1), Fc(0), Fc(0), Fc(0)],
        [Fc(0), Fc(1), Fc(0), Fc(0)],
        [Fc(a / 24), Fc(-k / 2), Fc(1), Fc(0)],
        [Fc(zeta3=Fraction(b)), Fc(a / 24), Fc(0), Fc(1)],
    ]
    for sr, c in extension_rows or ():
        rows.append([FormalConstant.coerce(c), FormalConstant.coerce(sr), Fc(0), Fc(0)])
    return rows

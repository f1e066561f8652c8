"""Open-string extension data.

Superpotentials are q-series in the graded convention of :mod:`hodgemirror.series`
(``L`` is the flat coordinate ``t``; a ``q**e t**j`` term of a superpotential carries
an implicit ``(2 pi i)**-(2 - j)``).  On an ``r``-fold cover they have the shape

    W = lambda/r**2 t**2 + s/r t + c + w(q),   w = xi * sum nt_d q**(d/r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .closed import MirrorMap, pullback
from .series import FormalConstant, PuiseuxLogSeries, theta

S = PuiseuxLogSeries


class InconsistentChargeError(ValueError):
    """Raised when brane data would need a non-integral charge."""


# ---- superpotentials ------------------------------------------------------------------


@dataclass(frozen=True)
class SuperpotentialDecomposition:
    lam: int
    s: int
    r: int
    c: FormalConstant
    w_series: PuiseuxLogSeries
    xi: int = 1
    ntilde: Tuple[Fraction, ...] = ()

    @property
    def s_mod_r(self) -> int:
        return self.s % self.r

    def reassemble(self) -> PuiseuxLogSeries:
        if not self.c.is_rational():
            raise ValueError("transcendental constant cannot be stored in a series")
        r = self.r
        head = S({(0, 2): Fraction(self.lam, r * r), (0, 1): Fraction(self.s, r),
                  (0, 0): self.c.folded().rational})
        return head + self.w_series


def superpotential_decompose(W: PuiseuxLogSeries, r: int,
                             reference: Optional[PuiseuxLogSeries] = None
                             ) -> SuperpotentialDecomposition:
    """Split ``W`` into ``(lambda, s, c, w)``; ``reference`` fixes the sign ``xi`` of ``w``."""
    r = int(r)
    if r < 1:
        raise ValueError("cover degree must be positive")
    if W.max_log_power > 2:
        raise ValueError("superpotential has log power above 2")
    for e, j in W.terms:
        if e < 0:
            raise ValueError("negative exponent in superpotential")
        if e > 0 and j > 0:
            raise ValueError("log terms are only allowed in the classical part")
        if (e * r).denominator != 1:
            raise ValueError(f"exponent {e} is not on the lattice (1/{r}) Z")
    lam = W.coefficient(0, 2) * r * r
    if lam.denominator != 1:
        raise InconsistentChargeError(f"lambda = {lam} is not an integer")
    s = W.coefficient(0, 1) * r
    if s.denominator != 1:
        raise InconsistentChargeError(f"s = {s} is not an integer")
    c = W.coefficient(0, 0)
    w = S({k: v for k, v in W.terms.items() if k[0] > 0}, W.order, r)
    xi = 1
    if reference is not None:
        if w.equals_to_order(reference):
            xi = 1
        elif w.equals_to_order(-reference):
            xi = -1
        else:
            raise ValueError("holomorphic tail is not +- the reference series")
    count = 0 if W.order is None else math.ceil(W.order * r) - 1
    if W.order is None and not w.is_zero():
        count = int(max(w.exponents()) * r)
    nt = tuple(xi * w.coefficient(Fraction(d, r)) for d in range(1, count + 1))
    return SuperpotentialDecomposition(int(lam), int(s), r, FormalConstant(c), w, xi, nt)


def superpotential(lam, s, c, r, psi_h: PuiseuxLogSeries, xi: int = 1) -> PuiseuxLogSeries:
    """Assemble ``lambda/r^2 t^2 + s/r t + c + xi Psi_h``."""
    if xi not in (1, -1):
        raise ValueError("only xi = +1 or -1 is supported")
    head = S({(0, 2): Fraction(lam) / r ** 2, (0, 1): Fraction(s) / r, (0, 0): Fraction(c)})
    return head + psi_h.scale(xi)


def infinitesimal_invariant(W: PuiseuxLogSeries) -> PuiseuxLogSeries:
    return theta(W, 2)


def truncated_normal_functions(dec: SuperpotentialDecomposition
                               ) -> Tuple[PuiseuxLogSeries, PuiseuxLogSeries]:
    """``(V, W)``: the e1 and e0 components of the canonical lift, built from the decomposition."""
    r = dec.r
    V = S({(0, 1): Fraction(2 * dec.lam, r * r), (0, 0): Fraction(dec.s, r)}) + theta(dec.w_series)
    return V, dec.reassemble()


def canonical_representative(W: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Reduce modulo ``t Z + Z``: linear coefficient in ``[0, 1)``, constant in ``(-1/2, 1/2]``."""
    lin = W.coefficient(0, 1)
    const = W.coefficient(0, 0)
    shift_lin = math.floor(lin)
    shift_const = math.ceil(const - Fraction(1, 2))
    return W - S({(0, 1): shift_lin, (0, 0): shift_const})


def domain_wall(W_plus: PuiseuxLogSeries, W_minus: PuiseuxLogSeries) -> PuiseuxLogSeries:
    return canonical_representative(W_plus - W_minus)


def abel_jacobi_limit(dec: SuperpotentialDecomposition) -> Tuple[Fraction, FormalConstant]:
    """``(s/r mod 1, c)``: limits of the e2 and e3 pairings of the untwisted current."""
    return Fraction(dec.s_mod_r, dec.r), dec.c


# ---- the real quintic -----------------------------------------------------------------


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def real_quintic_tau(order) -> PuiseuxLogSeries:
    """``2 sum_{d odd} (5d)!!/(d!!)^5 z^(d/2)`` modulo ``z**order``."""
    order = Fraction(order)
    terms = {}
    d = 1
    while Fraction(d, 2) < order:
        terms[(Fraction(d, 2), 0)] = Fraction(2 * _double_factorial(5 * d), _double_factorial(d) ** 5)
        d += 2
    return S(terms, order, 2)


def open_potential_q(tau: PuiseuxLogSeries, w0: PuiseuxLogSeries, mm: MirrorMap) -> PuiseuxLogSeries:
    """``Psi_h(q) = tau(z(q)) / w0(z(q))``."""
    if tau.is_zero():
        return S.zero(mm.order, tau.cover)
    num = pullback(tau, mm)
    return num / pullback(w0.truncate(tau.order), mm)


def b_brane_tension(w0: PuiseuxLogSeries, w1: PuiseuxLogSeries, tau: PuiseuxLogSeries
                    ) -> PuiseuxLogSeries:
    """``w1/2 - w0/4 + 2 tau``: the domain wall in z, before normalization by ``w0``."""
    return w1.scale(Fraction(1, 2)) - w0.scale(Fraction(1, 4)) + tau.scale(2)


# ---- extended monodromy -------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedMonodromy:
    matrix: List[List[Fraction]]
    r: int
    lams: Tuple[int, ...]
    ss: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.matrix)


def extended_monodromy(N, r: int, branes: Sequence[Tuple]) -> ExtendedMonodromy:
    """``[[r N, L], [0, 0]]`` with ``N^(h_k) = lambda_k g1 + s_k g0``."""
    N = linalg.to_matrix(N)
    if len(N) != 4:
        raise ValueError("closed monodromy logarithm must be 4x4")
    d = len(branes)
    size = 4 + d
    out = linalg.zeros(size)
    for i in range(4):
        for j in range(4):
            out[i][j] = N[i][j] * r
    for k, (lam, s) in enumerate(branes):
        out[2][4 + k] = Fraction(lam)
        out[3][4 + k] = Fraction(s)
    idx = linalg.nilpotency_index(out)
    if idx > 4:
        raise ValueError("extended logarithm has nilpotency index above 4")
    return ExtendedMonodromy(out, int(r), tuple(int(l) for l, _ in branes),
                             tuple(int(s) for _, s in branes))


# ---- open Gromov-Witten tables ------------------------------------------------------------

Key = Tuple[Fraction, Tuple[int, ...]]


@dataclass(frozen=True)
class OGWTable:
    """Bulk-insertion open invariants keyed by ``(int_beta H, insertion degrees)``.

    ``gamma_integrals`` maps the total degree of a cup product of insertions to
    its integral over the bounding chain (degree 4 defaults to ``lam``).
    """

    entries: Dict[Key, Fraction]
    lam: Fraction = Fraction(0)
    trivial_class: bool = True
    gamma_integrals: Dict[int, Fraction] = field(default_factory=dict)

    def gamma_integral(self, degree: int) -> Fraction:
        if degree in self.gamma_integrals:
            return Fraction(self.gamma_integrals[degree])
        return Fraction(self.lam) if degree == 4 else Fraction(0)


def ogw_key(degree, insertions: Sequence[int]) -> Key:
    return Fraction(degree), tuple(sorted(int(x) for x in insertions))


def ogw_table_from_ntilde(ntilde: Sequence, r: int, max_insertions: int = 2,
                          lam: Optional[Fraction] = None) -> OGWTable:
    """Entries ``OGW_{d/r}(H^m) = (d/r)^m nt_d`` generated by the Divisor axiom."""
    entries: Dict[Key, Fraction] = {}
    for d, nt in enumerate(ntilde, start=1):
        deg = Fraction(d, r)
        for m in range(max_insertions + 1):
            entries[ogw_key(deg, (2,) * m)] = deg ** m * Fraction(nt)
    if lam is not None:
        entries[ogw_key(0, (2, 2))] = Fraction(lam)
        entries[ogw_key(0, (0, 4))] = Fraction(lam)
    return OGWTable(entries, Fraction(lam or 0))


def ogw_axioms_check(table: OGWTable) -> List[Tuple[Key, str]]:
    """List every ``(entry, axiom)`` pair that the table violates."""
    report: List[Tuple[Key, str]] = []
    for key in sorted(table.entries):
        beta, ins = key
        value = table.entries[key]
        n = len(ins)
        if value and sum(ins) != 2 * n:
            report.append((key, "degree"))
        if any(x % 2 for x in ins):
            report.append((key, "degree"))
        if 0 in ins:
            if beta == 0 and n == 2 and table.trivial_class:
                other = ins[0] + ins[1]
                if value != table.gamma_integral(other):
                    report.append((key, "unit"))
            elif value:
                report.append((key, "unit"))
        if beta == 0 and 0 not in ins:
            if n == 2 and table.trivial_class:
                if value != table.gamma_integral(sum(ins)):
                    report.append((key, "zero"))
            elif value:
                report.append((key, "zero"))
        if beta != 0 and 2 in ins:
            rest = list(ins)
            rest.remove(2)
            smaller = (beta, tuple(rest))
            if smaller in table.entries and value != beta * table.entries[smaller]:
                report.append((key, "divisor"))
    return report

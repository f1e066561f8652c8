"""Monodromy weight filtrations and limit checks.

Vectors are columns of coordinates in the integral flat basis
``(g3, g2, g1, g0, h_1, ...)``; a matrix acts by ``v -> N v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from . import linalg
from .extension import ExtendedMonodromy
from .series import FormalConstant


@dataclass(frozen=True)
class NilpotentOperator:
    matrix: List[List[Fraction]]
    center: int = 3

    def __post_init__(self):
        m = linalg.to_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        self.index  # raises if not nilpotent

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def index(self) -> int:
        return linalg.nilpotency_index(self.matrix) if self.matrix else 1


@dataclass(frozen=True)
class WeightFiltration:
    """``spaces[k]`` is a basis of ``W_k``; indices outside the stored range clamp."""

    dim: int
    spaces: Dict[int, List[List[Fraction]]]

    @property
    def low(self) -> int:
        return min(self.spaces)

    @property
    def high(self) -> int:
        return max(self.spaces)

    def __getitem__(self, k: int) -> List[List[Fraction]]:
        if k < self.low:
            return []
        if k > self.high:
            return self.spaces[self.high]
        return self.spaces[k]

    def graded_dims(self, lo: int = None, hi: int = None) -> List[int]:
        lo = self.low if lo is None else lo
        hi = self.high if hi is None else hi
        return [len(self[k]) - len(self[k - 1]) for k in range(lo, hi + 1)]


def _full(n: int) -> List[List[Fraction]]:
    return linalg.identity(n)


def weight_filtration(N: NilpotentOperator) -> WeightFiltration:
    """Monodromy weight filtration centred at ``N.center`` (inductive kernel/image construction)."""
    n, w = N.dim, N.center
    mat = N.matrix
    top = N.index - 1
    spaces: Dict[int, List[List[Fraction]]] = {}

    def power(m):
        return linalg.mat_pow(mat, m)

    def build(U, Z, m):
        # N acts on U/Z with N^(m+1) = 0
        spaces[w + m] = U
        spaces[w - m - 1] = Z
        if m < 0:
            return
        if m == 0:
            return
        Nm = power(m)
        K = linalg.intersect(linalg.preimage(Nm, Z), U, n)
        I = linalg.sum_spaces(linalg.image_of(Nm, U), Z)
        build(K, I, m - 1)

    build(linalg.span_basis(_full(n)), [], top)
    lo, hi = w - top - 1, w + top
    filled = {}
    last: List[List[Fraction]] = []
    for k in range(lo, hi + 1):
        if k in spaces:
            last = spaces[k]
        filled[k] = last
    return WeightFiltration(n, filled)


@dataclass
class CheckReport:
    failures: List[Tuple[str, int, str]] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_filtration_properties(N, W: WeightFiltration, center: int = 3) -> CheckReport:
    """Check ``N(W_k) in W_{k-2}`` and that ``N^k: Gr_{w+k} -> Gr_{w-k}`` are isomorphisms."""
    mat = N.matrix if isinstance(N, NilpotentOperator) else linalg.to_matrix(N)
    if isinstance(N, NilpotentOperator):
        center = N.center
    report = CheckReport()
    lo, hi = W.low - 1, W.high + 1
    for k in range(lo, hi + 1):
        if not linalg.is_subspace(linalg.image_of(mat, W[k]), W[k - 2]):
            report.failures.append(("inclusion", k, f"N(W_{k}) is not contained in W_{k - 2}"))
    for k in range(1, max(hi - center, center - lo) + 1):
        up, down = center + k, center - k
        dim_up = len(W[up]) - len(W[up - 1])
        dim_down = len(W[down]) - len(W[down - 1])
        img = linalg.sum_spaces(linalg.image_of(linalg.mat_pow(mat, k), W[up]), W[down - 1])
        rank_img = len(img) - len(W[down - 1])
        if dim_up != dim_down or rank_img != dim_up:
            report.failures.append(("graded-isomorphism", k,
                                    f"N^{k}: Gr_{up} (dim {dim_up}) -> Gr_{down} (dim {dim_down}) "
                                    f"has rank {rank_img}"))
    report.info["graded_dims"] = W.graded_dims()
    return report


def extended_candidate_filtration(ext: ExtendedMonodromy, weight: int = 4) -> WeightFiltration:
    """Closed filtration of ``r N`` extended by the generators ``h_k`` placed in ``weight``."""
    n = ext.size
    closed = [row[:4] for row in ext.matrix[:4]]
    Wc = weight_filtration(NilpotentOperator(closed, 3))
    spaces = {}
    hs = [[Fraction(int(i == 4 + k)) for i in range(n)] for k in range(n - 4)]
    for k in range(Wc.low, Wc.high + 1):
        base = [v + [Fraction(0)] * (n - 4) for v in Wc[k]]
        spaces[k] = linalg.span_basis(base + hs) if k >= weight else base
    for k in range(Wc.high + 1, weight + 1):
        spaces[k] = linalg.span_basis([v + [Fraction(0)] * (n - 4) for v in Wc[Wc.high]] + hs)
    return WeightFiltration(n, spaces)


def extended_filtration_check(ext: ExtendedMonodromy, W_hat: WeightFiltration) -> CheckReport:
    """Check a proposed relative filtration against the extended logarithm.

    * ``N^(W^_k)`` lies in ``W^_{k-2}``;
    * ``W^_k`` meets the closed block in the weight filtration of ``r N``;
    * the index of ``r N (Z g1)`` in ``Z g0`` (the torsion group ``H``) equals ``r``;
    * each extension column reproduces the declared ``(lambda_k, s_k mod r)``.
    """
    report = CheckReport()
    mat = ext.matrix
    n = ext.size
    for k in range(W_hat.low - 1, W_hat.high + 2):
        if not linalg.is_subspace(linalg.image_of(mat, W_hat[k]), W_hat[k - 2]):
            report.failures.append(("inclusion", k, f"N^(W^_{k}) is not contained in W^_{k - 2}"))
    closed = [row[:4] for row in mat[:4]]
    Wc = weight_filtration(NilpotentOperator(closed, 3))
    block = [[Fraction(int(i == j)) for i in range(n)] for j in range(4)]
    for k in range(min(Wc.low, W_hat.low), max(Wc.high, W_hat.high) + 1):
        meet = linalg.intersect(W_hat[k], block, n)
        expect = [v + [Fraction(0)] * (n - 4) for v in Wc[k]]
        if not linalg.same_span(meet, expect):
            report.failures.append(("closed-block", k, f"W^_{k} does not restrict to W_{k}(rN)"))
    # torsion group H = Z<g0> / (r N)(Z<g1>)
    image = [[mat[3][2]]]
    if any(mat[i][2] for i in range(n) if i != 3):
        report.failures.append(("torsion", 2, "N^(g1) is not a multiple of g0"))
    if Fraction(image[0][0]).denominator != 1:
        report.failures.append(("torsion", 2, "N^(g1) is not integral"))
        torsion = 0
    else:
        torsion = linalg.cokernel_order([[int(image[0][0])]])
    report.info["torsion_index"] = torsion
    if torsion != ext.r:
        report.failures.append(("torsion", 2, f"torsion index {torsion} differs from r = {ext.r}"))
    for k, (lam, s) in enumerate(zip(ext.lams, ext.ss)):
        col = 4 + k
        if mat[2][col] != lam:
            report.failures.append(("lattice", col, f"lambda_{k} = {mat[2][col]}, declared {lam}"))
        sk = mat[3][col]
        if sk.denominator != 1 or int(sk) % ext.r != s % ext.r:
            report.failures.append(("lattice", col, f"s_{k} = {sk} mod {ext.r}, declared {s}"))
    return report


def gamma_class(a, b) -> Tuple[FormalConstant, ...]:
    """Components on ``([X], [H], [l], [p])``: ``(1, 0, a/24, -b Z3)``."""
    return (FormalConstant(1), FormalConstant(0), FormalConstant(Fraction(a) / 24),
            FormalConstant(zeta3=-Fraction(b)))

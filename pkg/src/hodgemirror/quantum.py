"""Quantum products, Dubrovin connections and (Open) WDVV residuals.

Two settings are supported.

* Rank one (a single Kahler parameter): the connection in the basis
  ``(e3, e2, e1, e0, f_1, ...)`` with the sparsity pattern of the classical
  cup product, its flat sections and the action ``theta s + A s``.
* General ``n``: a potential ``Phi(t_1..t_n)`` on flat coordinates, a pairing
  ``Q`` and open potentials ``Psi^k``.  The connection
  ``nabla_i = d_i + A_i`` has ``(A_i)[m][k] = sum_a Phi_aik Q^am`` and
  extension columns ``(A_i)[b][f_k] = sum_a Psi^k_ai Q^ab``.

Curvature and residuals are computed along separate paths: the residuals take
third derivatives directly from the monomials, the curvature differentiates
the connection matrices, which are built from Hessians.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .series import PuiseuxLogSeries, as_fraction, theta

Exponent = Tuple[Fraction, ...]


class QSeries:
    """Truncated series in ``q_1..q_n`` with rational exponents.

    Terms of total degree ``>= order`` are discarded (``order=None``: exact).
    Derivatives are the graded log-derivatives ``theta_i = q_i d/dq_i``.
    """

    __slots__ = ("nvars", "order", "_terms")

    def __init__(self, nvars: int, terms: Mapping = (), order=None):
        self.nvars = nvars
        self.order = None if order is None else as_fraction(order)
        clean: Dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(as_fraction(x) for x in e)
            if len(e) != nvars:
                raise ValueError("exponent length does not match the number of variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            c = as_fraction(c)
            if c == 0 or (self.order is not None and sum(e) >= self.order):
                continue
            clean[e] = clean.get(e, Fraction(0)) + c
            if clean[e] == 0:
                del clean[e]
        self._terms = clean

    @classmethod
    def constant(cls, nvars: int, c, order=None):
        return cls(nvars, {(0,) * nvars: c}, order)

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "QSeries"):
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")

    def _order_with(self, other):
        if self.order is None:
            return other.order
        if other.order is None:
            return self.order
        return min(self.order, other.order)

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return QSeries(self.nvars, terms, self._order_with(other))

    def __neg__(self):
        return QSeries(self.nvars, {e: -c for e, c in self._terms.items()}, self.order)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = as_fraction(c)
        return QSeries(self.nvars, {e: v * c for e, v in self._terms.items()}, self.order)

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        # every term has nonnegative degree, so the product is known to the smaller order
        order = self._order_with(other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if order is not None and sum(e) >= order:
                    continue
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return QSeries(self.nvars, terms, order)

    def theta(self, i: int) -> "QSeries":
        return QSeries(self.nvars, {e: c * e[i] for e, c in self._terms.items()}, self.order)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms and self.order == other.order

    def __repr__(self):
        return f"QSeries(nvars={self.nvars}, terms={self._terms}, order={self.order})"

    def __str__(self):
        pieces = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(f"q{i}" + (f"^({x})" if x != 1 else "") for i, x in enumerate(e) if x)
            pieces.append(f"{c}*{mono}" if mono else str(c))
        body = " + ".join(pieces) or "0"
        return body if self.order is None else f"{body} + O(|q|^{self.order})"


def _zero(n, order=None) -> QSeries:
    return QSeries(n, {}, order)


@dataclass(frozen=True)
class Potential:
    """``Phi = 1/6 sum kappa_ijk t_i t_j t_k + Phi_h(q)`` (terms below cubic are irrelevant)."""

    n: int
    kappa: Tuple = ()
    quantum: Optional[QSeries] = None

    def __post_init__(self):
        n = self.n
        k = self.kappa or [[[0] * n for _ in range(n)] for _ in range(n)]
        k = tuple(tuple(tuple(as_fraction(x) for x in row) for row in plane) for plane in k)
        for i, j, l in itertools.product(range(n), repeat=3):
            v = k[i][j][l]
            if any(k[a][b][c] != v for a, b, c in itertools.permutations((i, j, l))):
                raise ValueError("classical cubic coefficients must be fully symmetric")
        object.__setattr__(self, "kappa", k)
        if self.quantum is None:
            object.__setattr__(self, "quantum", _zero(n))
        elif self.quantum.nvars != n:
            raise ValueError("quantum part has the wrong number of variables")

    def third(self, i: int, j: int, k: int) -> QSeries:
        """``d_i d_j d_k Phi`` read off the monomials directly."""
        q = self.quantum
        terms = {e: c * e[i] * e[j] * e[k] for e, c in q.terms.items()}
        return QSeries(self.n, terms, q.order) + QSeries.constant(self.n, self.kappa[i][j][k])

    def hessian_quantum(self, i: int, j: int) -> QSeries:
        """``d_i d_j Phi_h`` (the classical Hessian is linear in ``t`` and handled via ``kappa``)."""
        return self.quantum.theta(i).theta(j)


@dataclass(frozen=True)
class OpenPotential:
    """``Psi = 1/2 sum lambda_ij t_i t_j + Psi_h(q)`` (linear and constant parts drop out)."""

    n: int
    lam: Tuple = ()
    quantum: Optional[QSeries] = None

    def __post_init__(self):
        n = self.n
        lam = self.lam or [[0] * n for _ in range(n)]
        lam = tuple(tuple(as_fraction(x) for x in row) for row in lam)
        if any(lam[i][j] != lam[j][i] for i in range(n) for j in range(n)):
            raise ValueError("classical open coefficients must be symmetric")
        object.__setattr__(self, "lam", lam)
        if self.quantum is None:
            object.__setattr__(self, "quantum", _zero(n))
        elif self.quantum.nvars != n:
            raise ValueError("open potential has the wrong number of variables")

    def second(self, i: int, j: int) -> QSeries:
        terms = {e: c * e[i] * e[j] for e, c in self.quantum.terms.items()}
        return QSeries(self.n, terms, self.quantum.order) + QSeries.constant(self.n, self.lam[i][j])


@dataclass(frozen=True)
class PairingMatrix:
    Q: Tuple
    inverse: Tuple = field(default=(), repr=False)

    def __post_init__(self):
        q = linalg.to_matrix(self.Q)
        n = len(q)
        if any(len(row) != n for row in q) or linalg.rank(q) != n:
            raise ValueError("pairing must be square and invertible")
        aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(q)]
        red, _ = linalg.rref(aug)
        inv = [row[n:] for row in red]
        object.__setattr__(self, "Q", tuple(tuple(r) for r in q))
        object.__setattr__(self, "inverse", tuple(tuple(r) for r in inv))

    @property
    def n(self) -> int:
        return len(self.Q)


@dataclass(frozen=True)
class ConnectionFamily:
    """Matrices ``A_i`` (rows and columns labelled by ``labels``)."""

    matrices: Tuple
    labels: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.labels)


def _check_dims(phi: Potential, psis: Sequence[OpenPotential], Q: PairingMatrix):
    if Q.n != phi.n:
        raise ValueError("pairing and potential dimensions differ")
    for psi in psis:
        if psi.n != phi.n:
            raise ValueError("open potential and potential dimensions differ")


def dubrovin_connection(phi: Potential, psis: Sequence[OpenPotential] = (), Q: PairingMatrix = None
                        ) -> ConnectionFamily:
    """Connection matrices of the (extended) quantum product, built from Hessians."""
    n = phi.n
    psis = list(psis)
    if Q is None:
        raise ValueError("a pairing is required")
    _check_dims(phi, psis, Q)
    size = n + len(psis)
    qinv = Q.inverse
    order = phi.quantum.order
    mats = []
    for i in range(n):
        A = [[_zero(n, order) for _ in range(size)] for _ in range(size)]
        for k in range(n):
            # third derivatives as theta_a of the Hessian entry (i, k)
            hess = phi.hessian_quantum(i, k)
            cols = [hess.theta(a) + QSeries.constant(n, phi.kappa[a][i][k]) for a in range(n)]
            for m in range(n):
                acc = _zero(n, order)
                for a in range(n):
                    if qinv[a][m]:
                        acc = acc + cols[a].scale(qinv[a][m])
                A[m][k] = acc
        for kk, psi in enumerate(psis):
            hcol = [psi.quantum.theta(a).theta(i) + QSeries.constant(n, psi.lam[a][i])
                    for a in range(n)]
            for b in range(n):
                acc = _zero(n, psi.quantum.order)
                for a in range(n):
                    if qinv[a][b]:
                        acc = acc + hcol[a].scale(qinv[a][b])
                A[b][n + kk] = acc
        mats.append(tuple(tuple(r) for r in A))
    labels = tuple(f"e{i}" for i in range(n)) + tuple(f"f{k}" for k in range(len(psis)))
    return ConnectionFamily(tuple(mats), labels)


def _matmul(a, b, n):
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = _zero(n)
            first = True
            for p in range(size):
                if a[i][p].is_zero() or b[p][j].is_zero():
                    continue
                term = a[i][p] * b[p][j]
                acc = term if first else acc + term
                first = False
            if first:
                acc = _zero(n, a[i][0].order)
            row.append(acc)
        out.append(row)
    return out


def curvature(conn: ConnectionFamily) -> Dict[Tuple[int, int], List[List[QSeries]]]:
    """``R_ij = d_i A_j - d_j A_i + [A_i, A_j]`` for ``i < j``."""
    mats = conn.matrices
    if not mats:
        return {}
    n = mats[0][0][0].nvars
    out = {}
    for i, j in itertools.combinations(range(len(mats)), 2):
        Ai, Aj = mats[i], mats[j]
        ij, ji = _matmul(Ai, Aj, n), _matmul(Aj, Ai, n)
        R = []
        for r in range(conn.size):
            R.append([Aj[r][c].theta(i) - Ai[r][c].theta(j) + ij[r][c] - ji[r][c]
                      for c in range(conn.size)])
        out[(i, j)] = R
    return out


def _contract(x: List[QSeries], qinv, y: List[QSeries], n, order) -> QSeries:
    acc = _zero(n, order)
    for a in range(n):
        for b in range(n):
            if qinv[a][b] and not x[a].is_zero() and not y[b].is_zero():
                acc = acc + (x[a] * y[b]).scale(qinv[a][b])
    return acc


def wdvv_residual(phi: Potential, Q: PairingMatrix) -> Dict[Tuple[int, int, int, int], QSeries]:
    """``sum Phi_aij Q^ab Phi_bkl - sum Phi_aik Q^ab Phi_bjl`` for all ``(i, j, k, l)``."""
    n = phi.n
    _check_dims(phi, (), Q)
    qinv = Q.inverse
    third = {}
    for idx in itertools.product(range(n), repeat=3):
        third[idx] = phi.third(*idx)
    order = phi.quantum.order
    out = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        lhs = _contract([third[(a, i, j)] for a in range(n)], qinv,
                        [third[(b, k, l)] for b in range(n)], n, order)
        rhs = _contract([third[(a, i, k)] for a in range(n)], qinv,
                        [third[(b, j, l)] for b in range(n)], n, order)
        out[(i, j, k, l)] = lhs - rhs
    return out


def open_wdvv_residual(phi: Potential, psis: Sequence[OpenPotential], Q: PairingMatrix
                       ) -> Dict[Tuple[int, int, int, int], QSeries]:
    """``sum Phi_aij Q^ab Psi_bl - sum Psi_ai Q^ab Phi_bjl``, keyed ``(i, j, l, k)``."""
    n = phi.n
    psis = list(psis)
    _check_dims(phi, psis, Q)
    qinv = Q.inverse
    third = {idx: phi.third(*idx) for idx in itertools.product(range(n), repeat=3)}
    out = {}
    for kk, psi in enumerate(psis):
        second = {idx: psi.second(*idx) for idx in itertools.product(range(n), repeat=2)}
        order = psi.quantum.order if phi.quantum.order is None else phi.quantum.order
        for i, j, l in itertools.product(range(n), repeat=3):
            lhs = _contract([third[(a, i, j)] for a in range(n)], qinv,
                            [second[(b, l)] for b in range(n)], n, order)
            rhs = _contract([second[(a, i)] for a in range(n)], qinv,
                            [third[(b, j, l)] for b in range(n)], n, order)
            out[(i, j, l, kk)] = lhs - rhs
    return out


def is_flat(conn: ConnectionFamily) -> bool:
    return all(x.is_zero() for R in curvature(conn).values() for row in R for x in row)


# ---- rank one ----------------------------------------------------------------------

S = PuiseuxLogSeries

RANK1_LABELS = ("e3", "e2", "e1", "e0")


def _phi_full(kappa, phi_h: PuiseuxLogSeries) -> PuiseuxLogSeries:
    return S({(0, 3): Fraction(kappa) / 6}) + phi_h


def _psi_full(lam, psi_h: PuiseuxLogSeries) -> PuiseuxLogSeries:
    return S({(0, 2): Fraction(lam) / 2}) + psi_h


def rank1_connection(kappa, phi_h: PuiseuxLogSeries,
                     open_data: Sequence[Tuple] = ()) -> List[List[PuiseuxLogSeries]]:
    """Connection matrix in the basis ``(e3, e2, e1, e0, f_1, ...)``.

    ``open_data`` lists ``(lambda_k, Psi_k,h)``.  Column ``j`` holds ``nabla_t`` of the
    ``j``-th basis vector; a section ``s`` is flat when ``theta s + A s = 0``.
    """
    size = 4 + len(open_data)
    A = [[S.zero() for _ in range(size)] for _ in range(size)]
    A[1][0] = S.one()
    A[2][1] = -theta(_phi_full(kappa, phi_h), 3)
    A[3][2] = -S.one()
    for k, (lam, psi_h) in enumerate(open_data):
        A[2][4 + k] = -theta(_psi_full(lam, psi_h), 2)
    return A


def apply_connection(A: List[List[PuiseuxLogSeries]], s: Sequence[PuiseuxLogSeries]
                     ) -> List[PuiseuxLogSeries]:
    """``theta s + A s``."""
    out = []
    for i, row in enumerate(A):
        acc = theta(s[i])
        for a, x in zip(row, s):
            if not a.is_zero() and not x.is_zero():
                acc = acc + a * x
        out.append(acc)
    return out


def flat_sections(kappa, phi_h: PuiseuxLogSeries, open_data: Sequence[Tuple] = ()
                  ) -> List[List[PuiseuxLogSeries]]:
    """Quantum deformed classes ``sigma(e3), sigma(e2), sigma(e1), sigma(e0)`` and ``sigma(f_k)``.

    Each section is given by its coordinates in ``(e3, e2, e1, e0, f_1, ...)``.
    """
    kappa = Fraction(kappa)
    t = S.log()
    d1, d2 = theta(phi_h), theta(phi_h, 2)
    size = 4 + len(open_data)

    def vec(*entries):
        v = list(entries) + [S.zero()] * (size - len(entries))
        return v

    zero, one = S.zero(), S.one()
    t2 = t * t
    t3 = t2 * t
    sections = [
        vec(one, -t, d1 - t * d2 - t2.scale(kappa / 2), phi_h.scale(2) - t * d1 - t3.scale(kappa / 6)),
        vec(zero, one, t.scale(kappa) + d2, t2.scale(kappa / 2) + d1),
        vec(zero, zero, one, t),
        vec(zero, zero, zero, one),
    ]
    for k, (lam, psi_h) in enumerate(open_data):
        lam = Fraction(lam)
        h = vec(zero, zero, t.scale(lam) + theta(psi_h), t2.scale(lam / 2) + psi_h)
        h[4 + k] = one
        sections.append(h)
    return sections

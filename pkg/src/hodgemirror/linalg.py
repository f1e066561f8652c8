"""Small exact linear algebra over the rationals (and integers).

Matrices are lists of rows of :class:`fractions.Fraction`.  Subspaces of
``Q^n`` are represented by a list of basis column vectors, kept in reduced
form by :func:`span_basis`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]
Vector = List[Fraction]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(n: int, m: int = None) -> Matrix:
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[x * c for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Sequence) -> Vector:
    return [sum((x * Fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in a]


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def is_zero_matrix(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def nilpotency_index(a: Matrix) -> int:
    """Smallest ``k`` with ``a**k = 0``; ValueError if ``a`` is not nilpotent."""
    n = len(a)
    p = identity(n)
    for k in range(1, n + 1):
        p = mat_mul(p, a)
        if is_zero_matrix(p):
            return k
    raise ValueError("matrix is not nilpotent")


def nilpotent_exp(a: Matrix) -> Matrix:
    """``exp(a)`` for nilpotent ``a`` as a finite sum."""
    nilpotency_index(a)
    n = len(a)
    out = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = mat_scale(mat_mul(term, a), Fraction(1, k))
        out = mat_add(out, term)
    return out


def unipotent_log(m: Matrix) -> Matrix:
    """``log(m)`` for unipotent ``m`` as a finite sum."""
    n = len(m)
    x = mat_sub(m, identity(n))
    nilpotency_index(x)
    out = zeros(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = mat_mul(term, x)
        out = mat_add(out, mat_scale(term, Fraction((-1) ** (k + 1), k)))
    return out


# ---- row reduction ---------------------------------------------------------


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, row)) for row in a]
    rows, cols = shape(m)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix) -> List[Vector]:
    """Basis of ``{v : a v = 0}`` as column vectors."""
    rows, cols = shape(a)
    if rows == 0:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def span_basis(vectors: Sequence[Sequence], dim: int = None) -> List[Vector]:
    """Canonical (reduced echelon) basis of the span of some column vectors."""
    vecs = [list(map(Fraction, v)) for v in vectors]
    if not vecs:
        return []
    red, pivots = rref(vecs)
    return [row for row in red[: len(pivots)]]


def column_space(a: Matrix) -> List[Vector]:
    return span_basis(transpose(a)) if a else []


def image_of(a: Matrix, basis: Sequence[Vector]) -> List[Vector]:
    """Basis of ``a(span(basis))``."""
    return span_basis([mat_vec(a, v) for v in basis])


def in_span(v: Sequence, basis: Sequence[Vector]) -> bool:
    v = list(map(Fraction, v))
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v]) == rank(list(basis))


def is_subspace(sub: Sequence[Vector], sup: Sequence[Vector]) -> bool:
    return all(in_span(v, sup) for v in sub)


def same_span(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    return is_subspace(a, b) and is_subspace(b, a)


def intersect(a: Sequence[Vector], b: Sequence[Vector], dim: int) -> List[Vector]:
    """Basis of ``span(a) ∩ span(b)`` inside ``Q^dim``."""
    if not a or not b:
        return []
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    system = transpose(cols)
    sols = nullspace(system)
    out = []
    for s in sols:
        w = [Fraction(0)] * dim
        for coeff, v in zip(s[: len(a)], a):
            w = [x + coeff * y for x, y in zip(w, v)]
        out.append(w)
    return span_basis(out)


def sum_spaces(a: Sequence[Vector], b: Sequence[Vector]) -> List[Vector]:
    return span_basis(list(a) + list(b))


def preimage(a: Matrix, target: Sequence[Vector]) -> List[Vector]:
    """Basis of ``{v : a v in span(target)}``."""
    n = shape(a)[1]
    # a v = T y  <=>  [a | -T] (v, y) = 0
    t_cols = [list(v) for v in target]
    system = [list(row) + [-t[i] for t in t_cols] for i, row in enumerate(a)]
    sols = nullspace(system)
    return span_basis([s[:n] for s in sols])


# ---- integer normal forms ----------------------------------------------------


def smith_diagonal(a: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors of an integer matrix (nonzero diagonal of its Smith form)."""
    for row in a:
        for x in row:
            if Fraction(x).denominator != 1:
                raise ValueError("Smith form requires an integer matrix")
    m = [[int(x) for x in row] for row in a]
    rows, cols = shape(m)
    diag: List[int] = []
    t = 0
    while t < min(rows, cols):
        # choose the smallest nonzero entry as pivot
        entries = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        done = False
        while not done:
            done = True
            p = m[t][t]
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if m[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    done = False
            if not done:
                entries = [(abs(m[i][t]), i, t) for i in range(t, rows) if m[i][t]]
                entries += [(abs(m[t][j]), t, j) for j in range(t, cols) if m[t][j]]
                _, pi, pj = min(entries)
                m[t], m[pi] = m[pi], m[t]
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % p), None)
            if bad is not None:
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                done = False
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def cokernel_order(a: Sequence[Sequence[int]]) -> int:
    """Order of ``Z^rows / a(Z^cols)``; 0 if the cokernel is infinite."""
    rows = len(a)
    diag = smith_diagonal(a)
    if len(diag) < rows:
        return 0
    out = 1
    for d in diag:
        out *= d
    return out

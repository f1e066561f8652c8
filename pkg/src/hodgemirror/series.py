"""Exact truncated Puiseux series with logarithmic terms.

A :class:`PuiseuxLogSeries` is a finite sum

    sum  c[e, j] * x**e * L**j

with rational coefficients ``c``, exponents ``e`` in ``(1/r)*Z`` and a formal
logarithm ``L``.  The series is *known modulo* ``x**order``: every term with
``e >= order`` has been discarded.  ``order=None`` marks an exact (finite)
expression such as a polynomial.

Normalization convention
------------------------
No factor of ``2*pi*i`` is ever stored.  For series in the B-model variable
``z`` the symbol ``L`` is ``log z``.  For series in the canonical coordinate
``q`` the symbol ``L`` is the flat coordinate ``t = log(q)/(2*pi*i)``, and a
quantity obtained by ``m`` logarithmic antiderivatives from a rational
generating function carries an implicit ``(2*pi*i)**-(m - j)`` on its
``q**e * t**j`` terms (``e > 0``).  With that grading the logarithmic
derivative acts uniformly as

    theta(x**e * L**j) = e * x**e * L**j + j * x**e * L**(j-1).

Transcendental limit constants are carried separately by
:class:`FormalConstant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

RationalLike = Union[int, Fraction, str]
Key = Tuple[Fraction, int]


def as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_root(value: Fraction, n: int) -> Fraction:
    """Exact n-th root of a rational, or ValueError if it is irrational."""
    if n == 1:
        return value
    if value < 0:
        if n % 2 == 0:
            raise ValueError(f"{value} has no real {n}-th root")
        return -rational_root(-value, n)
    p = _int_root(value.numerator, n)
    q = _int_root(value.denominator, n)
    if p is None or q is None:
        raise ValueError(f"{value} has no rational {n}-th root")
    return Fraction(p, q)


def _int_root(m: int, n: int) -> Optional[int]:
    if m in (0, 1):
        return m
    guess = round(m ** (1.0 / n)) if m.bit_length() < 1000 else int(math.isqrt(m))
    lo, hi = max(0, guess - 2), guess + 2
    # refine for large integers
    while lo ** n > m:
        lo //= 2
    while hi ** n < m:
        hi *= 2
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** n
        if p == m:
            return mid
        if p < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


# --------------------------------------------------------------------------
# Formal constants


@dataclass(frozen=True)
class FormalConstant:
    """``rational + zeta3 * Z3 + zeta2 * Z2`` with the formal symbols

    ``Z3 = zeta(3)/(2 pi i)**3`` and ``Z2 = zeta(2)/(2 pi i)**2``.

    ``Z2`` equals ``-1/24``; it is kept symbolic so that limit data can be
    written the way it arises (see :meth:`folded`).
    """

    rational: Fraction = Fraction(0)
    zeta3: Fraction = Fraction(0)
    zeta2: Fraction = Fraction(0)

    ZETA2_VALUE = Fraction(-1, 24)

    def __post_init__(self):
        for name in ("rational", "zeta3", "zeta2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def coerce(cls, value) -> "FormalConstant":
        if isinstance(value, FormalConstant):
            return value
        return cls(as_fraction(value))

    @classmethod
    def zeta2_multiple_of(cls, value: RationalLike) -> "FormalConstant":
        """Rewrite a rational as an exact multiple of ``Z2``."""
        return cls(zeta2=as_fraction(value) / cls.ZETA2_VALUE)

    def is_rational(self) -> bool:
        return self.zeta3 == 0 and self.zeta2 == 0

    def folded(self) -> "FormalConstant":
        """Fold the ``Z2`` part into the rational part."""
        return FormalConstant(self.rational + self.zeta2 * self.ZETA2_VALUE, self.zeta3, 0)

    def __add__(self, other):
        other = FormalConstant.coerce(other)
        return FormalConstant(self.rational + other.rational, self.zeta3 + other.zeta3,
                              self.zeta2 + other.zeta2)

    __radd__ = __add__

    def __neg__(self):
        return FormalConstant(-self.rational, -self.zeta3, -self.zeta2)

    def __sub__(self, other):
        return self + (-FormalConstant.coerce(other))

    def __rsub__(self, other):
        return FormalConstant.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, FormalConstant):
            if not self.is_rational() and not other.is_rational():
                raise ValueError("product of two transcendental formal constants")
            if other.is_rational():
                other = other.rational
            else:
                return other * self.rational
        c = as_fraction(other)
        return FormalConstant(self.rational * c, self.zeta3 * c, self.zeta2 * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalConstant(other)
        if not isinstance(other, FormalConstant):
            return NotImplemented
        return (self.rational, self.zeta3, self.zeta2) == (other.rational, other.zeta3, other.zeta2)

    def __hash__(self):
        return hash((self.rational, self.zeta3, self.zeta2))

    def __str__(self):
        parts = []
        if self.rational or self.is_rational():
            parts.append(str(self.rational))
        if self.zeta3:
            parts.append(f"{self.zeta3}*Z3")
        if self.zeta2:
            parts.append(f"{self.zeta2}*Z2")
        return " + ".join(parts)


# --------------------------------------------------------------------------
# Series


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _min_order(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class PuiseuxLogSeries:
    """Immutable truncated series in ``x**(1/r)`` with powers of a formal log.

    Parameters
    ----------
    terms : mapping ``(exponent, log_power) -> coefficient``
    order : exponents ``>= order`` are unknown; ``None`` means exact
    cover : the cover degree ``r``; exponents must lie in ``(1/r) Z``.
        Defaults to the smallest degree compatible with ``terms``.
    """

    __slots__ = ("_terms", "_order", "_cover")

    def __init__(self, terms: Mapping[Tuple[RationalLike, int], RationalLike] = (),
                 order: Optional[RationalLike] = None, cover: Optional[int] = None):
        order = None if order is None else as_fraction(order)
        clean: Dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        need = 1
        for (e, j), c in items:
            e = as_fraction(e)
            j = int(j)
            if j < 0:
                raise ValueError("negative log power")
            c = as_fraction(c)
            if c == 0 or (order is not None and e >= order):
                continue
            key = (e, j)
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
            need = _lcm(need, e.denominator)
        if cover is None:
            cover = need
        elif cover < 1 or cover % need:
            raise ValueError(f"exponents need cover degree {need}, got {cover}")
        self._terms = clean
        self._order = order
        self._cover = int(cover)

    # ---- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, order=None, cover=1):
        return cls({}, order, cover)

    @classmethod
    def one(cls, order=None):
        return cls({(0, 0): 1}, order)

    @classmethod
    def constant(cls, c, order=None):
        return cls({(0, 0): c}, order)

    @classmethod
    def monomial(cls, exponent=1, log_power=0, coeff=1, order=None):
        return cls({(exponent, log_power): coeff}, order)

    @classmethod
    def log(cls, order=None):
        """The formal logarithm ``L`` itself."""
        return cls({(0, 1): 1}, order)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[RationalLike], order=None, step: RationalLike = 1,
                          start: RationalLike = 0):
        """``sum coeffs[n] * x**(start + n*step)``; ``order`` defaults to the next exponent."""
        coeffs = list(coeffs)
        step = as_fraction(step)
        start = as_fraction(start)
        terms = {(start + n * step, 0): c for n, c in enumerate(coeffs)}
        if order is None:
            order = start + len(coeffs) * step
        return cls(terms, order)

    # ---- accessors --------------------------------------------------------

    @property
    def order(self) -> Optional[Fraction]:
        return self._order

    @property
    def cover(self) -> int:
        return self._cover

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponent: RationalLike, log_power: int = 0) -> Fraction:
        return self._terms.get((as_fraction(exponent), log_power), Fraction(0))

    def __getitem__(self, key):
        if isinstance(key, tuple):
            return self.coefficient(*key)
        return self.coefficient(key, 0)

    def coefficients(self, count: int, start: RationalLike = 0, step: RationalLike = 1,
                     log_power: int = 0):
        start, step = as_fraction(start), as_fraction(step)
        return [self.coefficient(start + n * step, log_power) for n in range(count)]

    def is_zero(self) -> bool:
        return not self._terms

    def exponents(self):
        return sorted({e for e, _ in self._terms})

    @property
    def max_log_power(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def has_logs(self) -> bool:
        return any(j for _, j in self._terms)

    def valuation(self) -> Optional[Fraction]:
        """Smallest exponent carrying a nonzero term (``None`` for zero)."""
        return min((e for e, _ in self._terms), default=None)

    def leading(self) -> Tuple[Fraction, Fraction]:
        """``(valuation, coefficient)`` of a series whose lowest stratum is log free."""
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("zero series has no leading term")
        if any(e == v and j > 0 for e, j in self._terms):
            raise ValueError("lowest-order term carries a logarithm")
        return v, self._terms[(v, 0)]

    def log_part(self, j: int) -> "PuiseuxLogSeries":
        """Coefficient series of ``L**j``."""
        return PuiseuxLogSeries({(e, 0): c for (e, k), c in self._terms.items() if k == j},
                                self._order, self._cover)

    def truncate(self, order: Optional[RationalLike]) -> "PuiseuxLogSeries":
        order = _min_order(self._order, None if order is None else as_fraction(order))
        return PuiseuxLogSeries(self._terms, order, self._cover)

    def with_cover(self, cover: int) -> "PuiseuxLogSeries":
        return PuiseuxLogSeries(self._terms, self._order, cover)

    # ---- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxLogSeries.constant(other, self._order)
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        return self._terms == other._terms and self._order == other._order

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self._order))

    def equals_to_order(self, other: "PuiseuxLogSeries") -> bool:
        """Equality of all terms known in both operands."""
        return (self - other).is_zero()

    def __repr__(self):
        return f"PuiseuxLogSeries({self}, order={self._order}, cover={self._cover})"

    def __str__(self):
        if not self._terms:
            body = "0"
        else:
            pieces = []
            for (e, j), c in self.items():
                mono = []
                if e != 0:
                    mono.append("x" if e == 1 else f"x^({e})")
                if j:
                    mono.append("L" if j == 1 else f"L^{j}")
                if not mono:
                    pieces.append(str(c))
                elif c == 1:
                    pieces.append("*".join(mono))
                else:
                    pieces.append(f"{c}*" + "*".join(mono))
            body = " + ".join(pieces)
        if self._order is not None:
            body += f" + O(x^({self._order}))"
        return body

    # ---- ring operations --------------------------------------------------

    def _coerce(self, other) -> "PuiseuxLogSeries":
        if isinstance(other, PuiseuxLogSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PuiseuxLogSeries.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return PuiseuxLogSeries(terms, _min_order(self._order, other._order),
                                _lcm(self._cover, other._cover))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxLogSeries({k: -c for k, c in self._terms.items()}, self._order, self._cover)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: RationalLike) -> "PuiseuxLogSeries":
        c = as_fraction(c)
        return PuiseuxLogSeries({k: v * c for k, v in self._terms.items()}, self._order, self._cover)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        order = _mul_order(self, other)
        terms: Dict[Key, Fraction] = {}
        for (e1, j1), c1 in self._terms.items():
            for (e2, j2), c2 in other._terms.items():
                e = e1 + e2
                if order is not None and e >= order:
                    continue
                k = (e, j1 + j2)
                terms[k] = terms.get(k, Fraction(0)) + c1 * c2
        return PuiseuxLogSeries(terms, order, _lcm(self._cover, other._cover))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        result = PuiseuxLogSeries.one(None).with_cover(self._cover)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def reciprocal(self, order: Optional[RationalLike] = None) -> "PuiseuxLogSeries":
        """Multiplicative inverse; ``order`` truncates when ``self`` is exact."""
        v, c = self.leading()
        # self = c x^v (1 + u)
        u = self.shift(-v).scale(1 / c) - 1
        if u.is_zero() and self._order is None:
            return PuiseuxLogSeries.monomial(-v, 0, 1 / c)
        if u.order is None:
            if order is None:
                raise ValueError("reciprocal of an exact non-monomial needs a truncation order")
            u = u.truncate(as_fraction(order) + v)
        uv = u.valuation()
        inv = PuiseuxLogSeries.one(u.order)
        power = PuiseuxLogSeries.one(u.order)
        if uv is not None:
            if uv <= 0:
                raise ValueError("tail of the divisor must have positive valuation")
            n = 0
            while True:
                n += 1
                power = power * (-u)
                if _negligible(power, inv.order):
                    break
                inv = inv + power
        return inv.shift(-v).scale(1 / c).with_cover(_lcm(inv.cover, self._cover))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if not isinstance(other, PuiseuxLogSeries):
            return NotImplemented
        order = None
        if other.order is None and self._order is not None:
            va = self.valuation()
            order = self._order - other.valuation() - (va if va is not None else self._order)
        return self * other.reciprocal(order)

    def __rtruediv__(self, other):
        return PuiseuxLogSeries.constant(as_fraction(other)) * self.reciprocal()

    def shift(self, amount: RationalLike) -> "PuiseuxLogSeries":
        """Multiply by ``x**amount``."""
        a = as_fraction(amount)
        order = None if self._order is None else self._order + a
        cover = _lcm(self._cover, a.denominator)
        return PuiseuxLogSeries({(e + a, j): c for (e, j), c in self._terms.items()}, order, cover)

    def shift_log(self, amount: RationalLike) -> "PuiseuxLogSeries":
        """Substitute ``L -> L + amount`` (monodromy ``t -> t + 1`` for ``amount=1``)."""
        a = as_fraction(amount)
        terms: Dict[Key, Fraction] = {}
        for (e, j), c in self._terms.items():
            for i in range(j + 1):
                k = (e, i)
                terms[k] = terms.get(k, Fraction(0)) + c * math.comb(j, i) * a ** (j - i)
        return PuiseuxLogSeries(terms, self._order, self._cover)

    def substitute_log(self, value: "PuiseuxLogSeries") -> "PuiseuxLogSeries":
        """Replace ``L`` by an arbitrary series."""
        result = PuiseuxLogSeries.zero(self._order, self._cover)
        for j in range(self.max_log_power + 1):
            part = self.log_part(j)
            if part.is_zero():
                continue
            result = result + part * value ** j
        return result

    def map_coefficients(self, fn) -> "PuiseuxLogSeries":
        return PuiseuxLogSeries({k: fn(k, c) for k, c in self._terms.items()}, self._order,
                                self._cover)


def _mul_order(a: PuiseuxLogSeries, b: PuiseuxLogSeries) -> Optional[Fraction]:
    # a known mod x^Na with valuation va  =>  a*b known mod x^min(Na + vb, Nb + va)
    va, vb = a.valuation(), b.valuation()
    cands = []
    if a.order is not None:
        cands.append(a.order + (vb if vb is not None else b.order if b.order is not None else 0))
    if b.order is not None:
        cands.append(b.order + (va if va is not None else a.order if a.order is not None else 0))
    if not cands:
        return None
    if a.is_zero() and b.is_zero():
        return _min_order(a.order, b.order)
    return min(cands)


# --------------------------------------------------------------------------
# Operations


def _negligible(power: PuiseuxLogSeries, order: Optional[Fraction]) -> bool:
    v = power.valuation()
    return v is None or (order is not None and v >= order)


def series_arith(a: PuiseuxLogSeries, b: PuiseuxLogSeries, op: str) -> PuiseuxLogSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def theta(a: PuiseuxLogSeries, times: int = 1) -> PuiseuxLogSeries:
    """Logarithmic derivative ``x d/dx`` with ``theta(L) = 1``."""
    for _ in range(times):
        terms: Dict[Key, Fraction] = {}
        for (e, j), c in a.terms.items():
            if e:
                terms[(e, j)] = terms.get((e, j), Fraction(0)) + e * c
            if j:
                k = (e, j - 1)
                terms[k] = terms.get(k, Fraction(0)) + j * c
        a = PuiseuxLogSeries(terms, a.order, a.cover)
    return a


def theta_antiderivative(a: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Inverse of :func:`theta` on log-free series without constant term."""
    if a.has_logs():
        raise ValueError("antiderivative implemented for log-free series only")
    if a.coefficient(0) != 0:
        raise ValueError("constant term would integrate to a logarithm")
    return a.map_coefficients(lambda k, c: c / k[0])


def exp_series(a: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Truncated exponential of a series with positive valuation."""
    v = a.valuation()
    if v is None:
        return PuiseuxLogSeries.one(a.order).with_cover(a.cover)
    if v <= 0:
        raise ValueError("exp needs a series with positive valuation")
    if a.order is None:
        raise ValueError("exp of a nonzero exact series needs a truncation order")
    result = PuiseuxLogSeries.one(a.order)
    power = PuiseuxLogSeries.one(a.order)
    n = 0
    while True:
        n += 1
        power = (power * a).scale(Fraction(1, n))
        if _negligible(power, result.order):
            break
        result = result + power
    return result.with_cover(_lcm(result.cover, a.cover))


def log_series(a: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Truncated ``log(1 + u)`` for a series ``a = 1 + u``, ``u`` of positive valuation."""
    u = a - 1
    v = u.valuation()
    if v is None:
        return PuiseuxLogSeries.zero(a.order, a.cover)
    if v <= 0:
        raise ValueError("log needs constant term 1 and a positive-valuation tail")
    if u.order is None:
        raise ValueError("log of a non-unit exact series needs a truncation order")
    result = PuiseuxLogSeries.zero(u.order)
    power = PuiseuxLogSeries.one(u.order)
    n = 0
    while True:
        n += 1
        power = power * u
        if _negligible(power, result.order):
            break
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result.with_cover(_lcm(result.cover, a.cover))


def exp_log(a: PuiseuxLogSeries, op: str) -> PuiseuxLogSeries:
    if op == "exp":
        return exp_series(a)
    if op == "log":
        return log_series(a)
    raise ValueError(f"unknown operation {op!r}")


def _unit_power(u: PuiseuxLogSeries, e: Fraction) -> PuiseuxLogSeries:
    """``(1 + u)**e`` for positive-valuation ``u``."""
    if e.denominator == 1 and e >= 0:
        return (1 + u) ** int(e)
    return exp_series(log_series(1 + u).scale(e))


def series_compose(outer: PuiseuxLogSeries, inner: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Substitute ``x -> inner`` in ``outer``.

    ``inner`` must be log free with positive valuation.  When ``outer`` has
    logarithms, ``log(inner) = log(c) + v*L + log(1 + tail)`` requires a
    leading coefficient ``c = 1``.
    """
    if inner.has_logs():
        raise ValueError("inner series must be log free")
    v, c = inner.leading()
    if v <= 0:
        raise ValueError("inner series must have positive valuation")
    u = inner.shift(-v).scale(1 / c) - 1  # inner = c x^v (1 + u)
    if u.valuation() is not None and u.valuation() <= 0:
        raise ValueError("inner series tail must have positive valuation")

    # precision of the result
    order = None
    if outer.order is not None:
        order = v * outer.order
    if u.order is not None:
        nonconst = [e for (e, j) in outer.terms if e != 0 or j > 0]
        if nonconst:
            emin = min(e for e, j in outer.terms if e != 0 or j > 0)
            cand = v * emin + u.order
            order = cand if order is None else min(order, cand)
    polynomial = not outer.has_logs() and all(e.denominator == 1 and e >= 0 for e, _ in outer.terms)
    if order is None and not u.is_zero() and not polynomial:
        raise ValueError("composition with an exact non-monomial needs a truncation order")
    u = u.truncate(order)

    log_inner = None
    if outer.has_logs():
        if c != 1:
            raise ValueError("log of a leading coefficient != 1 is not rational")
        log_inner = PuiseuxLogSeries.log(order).scale(v)
        if not u.is_zero():
            log_inner = log_inner + log_series(1 + u)

    result = PuiseuxLogSeries.zero(order)
    for e in sorted({e for e, _ in outer.terms}):
        poly = PuiseuxLogSeries({(0, j): coef for (ee, j), coef in outer.terms.items() if ee == e})
        if poly.has_logs():
            poly = poly.substitute_log(log_inner)
        if e == 0:
            result = result + poly
            continue
        ce = rational_root(c ** e.numerator, e.denominator)
        piece = _unit_power(u, e).truncate(None if order is None else order - v * e)
        piece = piece.shift(v * e).scale(ce)
        result = result + piece * poly
    return result.truncate(order)


def series_reverse(f: PuiseuxLogSeries) -> PuiseuxLogSeries:
    """Compositional inverse of ``f = c1 x + ...`` (log free)."""
    if f.has_logs():
        raise ValueError("cannot revert a series with logarithms")
    if f.order is None:
        raise ValueError("reversion needs a truncation order")
    c1 = f.coefficient(1)
    if c1 == 0 or f.valuation() != 1:
        raise ValueError("reversion needs a nonzero linear term and no lower terms")
    x = PuiseuxLogSeries.monomial(1)
    tail = f - PuiseuxLogSeries.monomial(1, 0, c1)
    g = x.scale(1 / c1).truncate(f.order)
    # each fixed-point step fixes at least one more stratum of exponents
    for _ in range(int(f.order * f.cover) + 2):
        nxt = (x - series_compose(tail, g)).scale(1 / c1).truncate(f.order)
        if nxt == g:
            break
        g = nxt
    return g

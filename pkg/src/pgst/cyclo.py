"""Exact arithmetic for real cyclotomic numbers.

A :class:`CycloReal` of conductor ``m`` lives in the ``2m``-th cyclotomic field
``Q(zeta)``, ``zeta = exp(i*pi/m)``, and is stored as its coordinate vector in
the power basis ``1, zeta, ..., zeta**(d-1)`` with ``d = phi(2m)``, i.e. reduced
modulo the ``2m``-th cyclotomic polynomial. Coordinates are exact rationals,
kept as a tuple of Python integers over one positive common denominator.

The element ``2*cos(r*pi/m)`` is ``zeta**r + zeta**-r``; sums of such values
coming from different conductors are first lifted to the least common
multiple of the conductors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable

from ._arith import factorize, is_prime, lcm, mobius, totient
from .errors import DomainError

__all__ = [
    "CycloReal",
    "cyclotomic_polynomial",
    "make_cos",
    "from_rational",
    "lift",
    "add",
    "neg",
    "scale",
    "is_zero",
    "is_rational",
    "linear_combination",
    "verify_alternating_identity",
]


# --------------------------------------------------------------------------
# cyclotomic polynomials and monomial reduction tables
# --------------------------------------------------------------------------

def _divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; raises if the division leaves a remainder
    num = list(num)
    dd = len(den) - 1
    support = [(i, c) for i, c in enumerate(den[:-1]) if c]
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            base = k - dd
            for i, ci in support:
                num[base + i] -= c * ci
            num[k] = 0
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _compose_power(poly: tuple[int, ...], p: int) -> list[int]:
    """Coefficients of ``poly(x**p)``."""
    out = [0] * ((len(poly) - 1) * p + 1)
    for i, c in enumerate(poly):
        out[i * p] = c
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the ``n``-th cyclotomic polynomial.

    Built by iterated exact division: for squarefree ``n = s*p`` with ``p``
    prime, ``Phi_n(x) = Phi_s(x**p) / Phi_s(x)``; a non-squarefree ``n`` is
    reduced to its radical through ``Phi_n(x) = Phi_rad(x**(n/rad))``.
    """
    if n < 1:
        raise DomainError(f"cyclotomic index must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    primes = [p for p, _ in factorize(n)]
    rad = math.prod(primes)
    if rad != n:
        return tuple(_compose_power(cyclotomic_polynomial(rad), n // rad))
    p = primes[-1]
    s = n // p
    lower = cyclotomic_polynomial(s)
    return tuple(_divexact(_compose_power(lower, p), lower))


@lru_cache(maxsize=32)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of ``zeta**k`` for ``d <= k < m``, ``d = phi(2m)``."""
    phi_poly = cyclotomic_polynomial(2 * m)
    d = len(phi_poly) - 1
    tail = phi_poly[:-1]
    rows = []
    if d >= m:
        return ()
    # zeta**d = -(Phi - x**d)
    cur = [-c for c in tail]
    rows.append(tuple(cur))
    for _ in range(d + 1, m):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i, c in enumerate(tail):
                if c:
                    cur[i] -= top * c
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def _degree(m: int) -> int:
    return totient(2 * m)


def _add_monomial(acc: list[int], m: int, k: int, c: int) -> None:
    """``acc += c * zeta**k`` in conductor ``m`` (``acc`` has length phi(2m))."""
    if not c:
        return
    k %= 2 * m
    if k >= m:
        k -= m
        c = -c
    d = len(acc)
    if k < d:
        acc[k] += c
        return
    row = _reduction_rows(m)[k - d]
    for i, v in enumerate(row):
        if v:
            acc[i] += c * v


@lru_cache(maxsize=None)
def _trace_weights(m: int) -> tuple[tuple[int, ...], int]:
    # normalised trace of zeta**k over Q is mu(q) / phi(q), q = N / gcd(k, N);
    # returned as integer weights over one common denominator
    n = 2 * m
    qs = [n // math.gcd(k, n) for k in range(_degree(m))]
    common = lcm(*(totient(q) for q in set(qs)))
    return tuple(mobius(q) * (common // totient(q)) for q in qs), common


# --------------------------------------------------------------------------
# the value type
# --------------------------------------------------------------------------

def _normalise(num: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    num = tuple(num)
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    g = den
    for c in num:
        if g == 1:
            break
        g = math.gcd(g, c)
    if g > 1:
        num = tuple(c // g for c in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


@dataclass(frozen=True, slots=True, eq=False)
class CycloReal:
    """Exact real number in the ``2*conductor``-th cyclotomic field.

    ``num[k] / den`` is the coordinate of ``zeta**k``. Instances are always
    in canonical reduced form, so two values of equal conductor are equal
    exactly when their ``key`` tuples are. ``==`` also works across
    conductors (both sides are lifted to the lcm); the hash is the exact
    normalised field trace, which does not depend on the conductor.
    """

    conductor: int
    num: tuple[int, ...]
    den: int = 1
    _hash: int | None = field(default=None, repr=False, compare=False)

    @classmethod
    def _make(cls, conductor: int, num: Iterable[int], den: int = 1) -> "CycloReal":
        n, d = _normalise(num, den)
        return cls(conductor, n, d)

    # -- views -------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def key(self) -> tuple:
        """Hashable canonical form ``(conductor, num, den)``."""
        return (self.conductor, self.num, self.den)

    def float_value(self) -> float:
        m = self.conductor
        return math.fsum(c * math.cos(k * math.pi / m) for k, c in enumerate(self.num) if c) / self.den

    __float__ = float_value

    def conjugate(self) -> "CycloReal":
        """Image under ``zeta -> 1/zeta``; equals ``self`` for every real value."""
        acc = [0] * self.degree
        for k, c in enumerate(self.num):
            _add_monomial(acc, self.conductor, -k, c)
        return CycloReal._make(self.conductor, acc, self.den)

    def trace(self) -> Fraction:
        """Field trace divided by the field degree (independent of conductor)."""
        w, common = _trace_weights(self.conductor)
        return Fraction(sum(c * x for c, x in zip(self.num, w) if c), common * self.den)

    def rational(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def lift(self, m2: int) -> "CycloReal":
        return lift(self, m2)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "CycloReal | None":
        if isinstance(other, CycloReal):
            return other
        if isinstance(other, Rational):
            return from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return add(self, neg(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return add(o, neg(self))

    def __mul__(self, other):
        if isinstance(other, Rational):
            return scale(self, other)
        if not isinstance(other, CycloReal):
            return NotImplemented
        return _multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.conductor == self.conductor:
            return self.num == o.num and self.den == o.den
        return (self - o).is_zero()

    def __hash__(self):
        if self._hash is None:
            r = self.rational()
            object.__setattr__(self, "_hash", hash(r if r is not None else self.trace()))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.num) if c]
        body = " + ".join(terms) or "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycloReal[m={self.conductor}]({body} ~ {self.float_value():.12g})"


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def from_rational(q, conductor: int = 1) -> CycloReal:
    q = Fraction(q)
    num = [0] * _degree(conductor)
    num[0] = q.numerator
    return CycloReal._make(conductor, num, q.denominator)


def make_cos(r: int, m: int) -> CycloReal:
    """Exact ``2*cos(r*pi/m)`` in conductor ``m``; requires ``1 <= r <= m-1``."""
    if m < 2 or not 1 <= r <= m - 1:
        raise DomainError(f"make_cos needs 1 <= r <= m-1, got r={r}, m={m}")
    acc = [0] * _degree(m)
    _add_monomial(acc, m, r, 1)
    _add_monomial(acc, m, -r, 1)
    return CycloReal._make(m, acc)


def lift(x: CycloReal, m2: int) -> CycloReal:
    """Represent ``x`` in conductor ``m2``, a multiple of ``x.conductor``."""
    m = x.conductor
    if m2 < 1 or m2 % m:
        raise DomainError(f"cannot lift conductor {m} to {m2}")
    if m2 == m:
        return x
    c = m2 // m
    acc = [0] * _degree(m2)
    for k, v in enumerate(x.num):
        _add_monomial(acc, m2, c * k, v)
    return CycloReal._make(m2, acc, x.den)


def _common(xs: list[CycloReal]) -> list[CycloReal]:
    m = lcm(*(x.conductor for x in xs))
    return [lift(x, m) for x in xs]


def add(x: CycloReal, y: CycloReal) -> CycloReal:
    if x.conductor != y.conductor:
        x, y = _common([x, y])
    if x.den == y.den:
        return CycloReal._make(x.conductor, map(int.__add__, x.num, y.num), x.den)
    return CycloReal._make(
        x.conductor,
        (a * y.den + b * x.den for a, b in zip(x.num, y.num)),
        x.den * y.den,
    )


def neg(x: CycloReal) -> CycloReal:
    return CycloReal(x.conductor, tuple(-c for c in x.num), x.den)


def scale(x: CycloReal, q) -> CycloReal:
    q = Fraction(q)
    return CycloReal._make(x.conductor, (c * q.numerator for c in x.num), x.den * q.denominator)


def is_zero(x: CycloReal) -> bool:
    return x.is_zero()


def is_rational(x: CycloReal) -> Fraction | None:
    """The rational value of ``x`` if it lies in Q, else None."""
    return x.rational()


def linear_combination(terms: Iterable[tuple[int, CycloReal]]) -> CycloReal:
    """Exact ``sum(c * x)`` over integer coefficients, lifted to one conductor."""
    terms = [(c, x) for c, x in terms if c]
    if not terms:
        return from_rational(0)
    m = lcm(*(x.conductor for _, x in terms))
    d = _degree(m)
    den = lcm(*(x.den for _, x in terms))
    acc = [0] * d
    for c, x in terms:
        x = lift(x, m)
        f = c * (den // x.den)
        for k, v in enumerate(x.num):
            if v:
                acc[k] += f * v
    return CycloReal._make(m, acc, den)


def _multiply(x: CycloReal, y: CycloReal) -> CycloReal:
    if x.conductor != y.conductor:
        x, y = _common([x, y])
    m = x.conductor
    prod = [0] * (2 * len(x.num))
    for i, a in enumerate(x.num):
        if a:
            for j, b in enumerate(y.num):
                if b:
                    prod[i + j] += a * b
    acc = [0] * _degree(m)
    for k, c in enumerate(prod):
        _add_monomial(acc, m, k, c)
    return CycloReal._make(m, acc, x.den * y.den)


def verify_alternating_identity(kind: str, p: int) -> bool:
    """Check ``1 + sum_j (-1)**j * v_j == 0`` exactly for an odd prime ``p``.

    ``kind="prime"`` uses ``v_j = 2cos(j*pi/p)``; ``kind="twice_prime"`` uses
    ``v_j = 2cos(2j*pi/(2p))``, with ``j`` running over ``1..(p-1)/2``.
    """
    if p < 3 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    half = (p - 1) // 2
    if kind == "prime":
        vals = [make_cos(j, p) for j in range(1, half + 1)]
    elif kind == "twice_prime":
        vals = [make_cos(2 * j, 2 * p) for j in range(1, half + 1)]
    else:
        raise DomainError(f"unknown identity kind {kind!r}")
    total = linear_combination([(1 if j % 2 == 0 else -1, v) for j, v in enumerate(vals, 1)])
    return (total + 1).is_zero()

"""Exact arithmetic in the field generated by all roots of unity over Q.

An element is a finite rational combination of roots of unity e(q) =
exp(2*pi*i*q), q rational.  Every value is kept in a canonical basis, so
equality of mathematical values is equality of stored dictionaries.

Canonical basis.  For a prime power p**v the basis of Q(zeta_{p**v})
consists of the roots e(a/p**v) whose top base-p digit d = a // p**(v-1)
satisfies d < p-1 for odd p, and a < 2**(v-1) for p = 2.  The single
rewriting rule comes from the cyclotomic polynomial Phi_{p**v}(x) =
Phi_p(x**(p**(v-1))):

    e((d*p**(v-1) + s) / p**v)  with d = p-1
        = -sum_{d'=0}^{p-2} e((d'*p**(v-1) + s) / p**v)   (p odd)
    e(a / 2**v) with a >= 2**(v-1)  =  -e((a - 2**(v-1)) / 2**v)

For a composite denominator the exponent is split by CRT into prime-power
parts and each part is reduced independently; the basis of Q(zeta_n) is the
set of products.  Basis membership depends only on the reduced fraction, so
the stored form never depends on the conductor a value was computed in.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Optional, Union

Rational = Union[int, Fraction]

__all__ = [
    "Cyclotomic",
    "root_of_unity",
    "cyc_arith",
    "lcm",
    "ZERO",
    "ONE",
]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_power_split(n: int) -> tuple[tuple[int, int], ...]:
    """Factor n >= 1 into (p, p**v) pairs."""
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                m //= d
                q *= d
            out.append((d, q))
        d += 1
    if m > 1:
        out.append((m, m))
    return tuple(out)


def _expand_prime_power(a: int, p: int, q: int) -> tuple[tuple[Fraction, int], ...]:
    """Rewrite e(a/q), q = p**v, 0 <= a < q, into basis terms (exponent, sign)."""
    qp = q // p
    if p == 2:
        if a < qp:
            return ((Fraction(a, q), 1),)
        return ((Fraction(a - qp, q), -1),)
    d, s = divmod(a, qp)
    if d < p - 1:
        return ((Fraction(a, q), 1),)
    return tuple((Fraction(d2 * qp + s, q), -1) for d2 in range(p - 1))


@lru_cache(maxsize=None)
def _expand_root(q: Fraction) -> tuple[tuple[Fraction, int], ...]:
    """Expand e(q) into canonical basis terms (exponent, sign)."""
    q = q % 1
    n = q.denominator
    if n == 1:
        return ((Fraction(0), 1),)
    factors = []
    for p, pk in _prime_power_split(n):
        rest = n // pk
        ap = (q.numerator * pow(rest, -1, pk)) % pk
        factors.append(_expand_prime_power(ap, p, pk))
    acc: list[tuple[Fraction, int]] = [(Fraction(0), 1)]
    for factor in factors:
        acc = [((e1 + e2) % 1, s1 * s2) for e1, s1 in acc for e2, s2 in factor]
    return tuple(acc)


def _normalize(raw: Iterable[tuple[Fraction, Fraction]]) -> dict[Fraction, Fraction]:
    terms: dict[Fraction, Fraction] = {}
    for q, c in raw:
        if c == 0:
            continue
        for b, sign in _expand_root(q):
            new = terms.get(b, 0) + (c if sign > 0 else -c)
            if new == 0:
                terms.pop(b, None)
            else:
                terms[b] = new
    return terms


class Cyclotomic:
    """Immutable element of the abelian closure of Q in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Rational, Rational] | None = None):
        raw = []
        if terms:
            raw = [(Fraction(q), Fraction(c)) for q, c in terms.items()]
        self._terms = _normalize(raw)
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, normalized: dict[Fraction, Fraction]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj._terms = normalized
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, c: Rational) -> "Cyclotomic":
        c = Fraction(c)
        return cls._raw({} if c == 0 else {Fraction(0): c})

    @property
    def terms(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Term pairs (exponent, coefficient) sorted by exponent."""
        return tuple(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {Fraction(0)}

    def as_rational(self) -> Optional[Fraction]:
        """The rational value, or None if the element is irrational."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {Fraction(0)}:
            return self._terms[Fraction(0)]
        return None

    def level(self) -> int:
        """Lcm of the exponent denominators of the stored support."""
        n = 1
        for q in self._terms:
            n = lcm(n, q.denominator)
        return n

    # arithmetic

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for q, c in other._terms.items():
            new = merged.get(q, 0) + c
            if new == 0:
                merged.pop(q, None)
            else:
                merged[q] = new
        return Cyclotomic._raw(merged)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic._raw({q: -c for q, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return ZERO
            return Cyclotomic._raw({q: v * c for q, v in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        raw = []
        for q1, c1 in self._terms.items():
            for q2, c2 in other._terms.items():
                raw.append(((q1 + q2) % 1, c1 * c2))
        return Cyclotomic._raw(_normalize(raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, e(q) -> e(1-q)."""
        raw = [((1 - q) % 1, c) for q, c in self._terms.items()]
        return Cyclotomic._raw(_normalize(raw))

    def galois(self, a: int) -> "Cyclotomic":
        """Galois substitution e(q) -> e(a*q); a must be prime to the level."""
        n = self.level()
        if gcd(a, n) != 1:
            raise ValueError(f"galois exponent {a} not prime to level {n}")
        raw = [((a * q) % 1, c) for q, c in self._terms.items()]
        return Cyclotomic._raw(_normalize(raw))

    def inverse(self) -> "Cyclotomic":
        """Exact inverse via the product of Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        r = self.as_rational()
        if r is not None:
            return Cyclotomic.rational(Fraction(1) / r)
        n = self.level()
        prod = ONE
        for a in range(2, n):
            if gcd(a, n) == 1:
                prod = prod * self.galois(a)
        norm = (prod * self).as_rational()
        if norm is None or norm == 0:
            raise ArithmeticError("norm of nonzero cyclotomic must be a nonzero rational")
        return prod * (Fraction(1) / norm)

    # comparisons and serialization

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == Fraction(other)
        if isinstance(other, Cyclotomic):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def to_pairs(self) -> list[list[list[int]]]:
        """Serialize as [[[num_q, den_q], [num_c, den_c]], ...], exponents ascending."""
        return [
            [[q.numerator, q.denominator], [c.numerator, c.denominator]]
            for q, c in self.terms
        ]

    @classmethod
    def from_pairs(cls, pairs) -> "Cyclotomic":
        return cls({Fraction(nq, dq): Fraction(nc, dc) for (nq, dq), (nc, dc) in pairs})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for q, c in self.terms:
            if q == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"e({q})")
            else:
                parts.append(f"{c}*e({q})")
        return " + ".join(parts)


def _coerce(value) -> "Cyclotomic":
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.rational(value)
    return NotImplemented


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def root_of_unity(q: Rational) -> Cyclotomic:
    """The normalized element representing exp(2*pi*i*q)."""
    return Cyclotomic({Fraction(q) % 1: 1})


def cyc_arith(op: str, a: Cyclotomic, b: Optional[Cyclotomic] = None) -> Cyclotomic:
    """Dispatch {add, mul, negate, conjugate}; b is required iff op is binary."""
    binary = op in ("add", "mul")
    if binary and b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if not binary and b is not None:
        raise ValueError(f"operation {op!r} takes a single operand")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "negate":
        return -a
    if op == "conjugate":
        return a.conjugate()
    raise ValueError(f"unknown operation {op!r}")

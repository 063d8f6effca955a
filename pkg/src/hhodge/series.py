"""Exact Bernoulli polynomials and truncated generating-function expansions.

All series live in shifted variables: t, (x-1), or the pair (x+-1, x--1).
Closed forms are expanded by exact truncated power-series division, which is
total here because every denominator has a nonzero constant term once the
vanishing (x-1) powers are factored out.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence, Union

from .cyclo import Cyclotomic, root_of_unity

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, Cyclotomic]

__all__ = [
    "RationalPolynomial",
    "TruncSeries",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "delta_bernoulli",
    "frk_series",
    "frk_shifted_series",
    "f_r_at_one_series",
    "iif_series",
    "if_bivariate",
    "f_r_eval_at_root",
]


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0(0) .. B_n(0) with B_1(0) = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = [Fraction(1)]
    for m in range(1, n + 1):
        s = Fraction(0)
        for j in range(m):
            s += comb(m + 1, j) * out[j]
        out.append(-s / (m + 1))
    return tuple(out)


class RationalPolynomial:
    """Univariate polynomial over Q, dense ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rational]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPolynomial) and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({list(self.coeffs)!r})"


@lru_cache(maxsize=None)
def bernoulli_polynomial(n: int) -> RationalPolynomial:
    """B_n(z) = sum_k C(n,k) B_{n-k}(0) z^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    B = bernoulli_numbers(n)
    return RationalPolynomial([comb(n, k) * B[n - k] for k in range(n + 1)])


def delta_bernoulli(n: int, q: Rational) -> Fraction:
    """(B_n(q) - B_n(0)) / n! for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = bernoulli_polynomial(n)
    return (poly(Fraction(q)) - poly(0)) / factorial(n)


class TruncSeries:
    """Truncated power series in 1 or 2 named variables.

    Coefficients are rationals or cyclotomics; zero coefficients and terms
    beyond the truncation order are never stored.
    """

    __slots__ = ("variables", "order", "coeffs")

    def __init__(self, variables: Sequence[str], order: int, coeffs=None):
        if len(variables) not in (1, 2):
            raise ValueError("series take 1 or 2 variables")
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.variables = tuple(variables)
        self.order = order
        clean: dict[tuple[int, ...], Scalar] = {}
        if coeffs:
            for exps, c in coeffs.items():
                key = tuple(exps)
                if len(key) != len(self.variables):
                    raise ValueError("exponent arity mismatch")
                if sum(key) > order:
                    continue
                if isinstance(c, Cyclotomic):
                    r = c.as_rational()
                    c = r if r is not None else c
                else:
                    c = Fraction(c)
                if c == 0:
                    continue
                clean[key] = c
        self.coeffs = clean

    def coefficient(self, *exps: int) -> Scalar:
        return self.coeffs.get(tuple(exps), Fraction(0))

    def _compat(self, other: "TruncSeries") -> None:
        if self.variables != other.variables or self.order != other.order:
            raise ValueError("series contexts differ")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._compat(other)
        merged = dict(self.coeffs)
        for k, c in other.coeffs.items():
            merged[k] = merged.get(k, 0) + c
        return TruncSeries(self.variables, self.order, merged)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(
            self.variables, self.order, {k: v * c for k, v in self.coeffs.items()}
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._compat(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                if sum(key) > self.order:
                    continue
                out[key] = out.get(key, 0) + c1 * c2
        return TruncSeries(self.variables, self.order, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.order, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for exps in sorted(self.coeffs, key=lambda k: (sum(k), k)):
            c = self.coeffs[exps]
            mon = "*".join(
                f"({v})^{e}" if e != 1 else f"({v})"
                for v, e in zip(self.variables, exps)
                if e
            )
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def _divide_univariate(num: Sequence[Fraction], den: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients of num/den to the given order; den[0] must be nonzero."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    inv0 = Fraction(1) / den[0]
    out = []
    for j in range(order + 1):
        acc = num[j] if j < len(num) else Fraction(0)
        for i in range(1, min(j, len(den) - 1) + 1):
            acc -= den[i] * out[j - i]
        out.append(acc * inv0)
    return out


def frk_series(r: int, k: int, order: int) -> TruncSeries:
    """(e^{kt/r} - 1)/(e^t - 1) in t: coefficient of t^j is deltaB_{j+1}(k/r)."""
    if r < 1 or not 0 <= k < r:
        raise ValueError("need r >= 1 and 0 <= k < r")
    q = Fraction(k, r)
    return TruncSeries(
        ("t",), order, {(j,): delta_bernoulli(j + 1, q) for j in range(order + 1)}
    )


def frk_shifted_series(r: int, k: int, order: int) -> TruncSeries:
    """(x^k - 1)/(x^r - 1) expanded about x = 1 in the variable x-1."""
    if r < 1 or not 0 <= k < r:
        raise ValueError("need r >= 1 and 0 <= k < r")
    if k == 0:
        return TruncSeries(("x-1",), order)
    num = [Fraction(comb(k, i)) for i in range(1, k + 1)]
    den = [Fraction(comb(r, i)) for i in range(1, r + 1)]
    out = _divide_univariate(num, den, order)
    return TruncSeries(("x-1",), order, {(j,): c for j, c in enumerate(out)})


def f_r_at_one_series(r: int, order: int) -> TruncSeries:
    """1/(x-1) - r/(x^r - 1) expanded about x = 1."""
    if r < 1:
        raise ValueError("need r >= 1")
    # ((x^r-1)/(x-1) - r) / (x^r-1) = (sum_{i>=2} C(r,i) u^{i-2}) / (sum_{i>=1} C(r,i) u^{i-1})
    num = [Fraction(comb(r, i)) for i in range(2, r + 1)] or [Fraction(0)]
    den = [Fraction(comb(r, i)) for i in range(1, r + 1)]
    out = _divide_univariate(num, den, order)
    return TruncSeries(("x-1",), order, {(j,): c for j, c in enumerate(out)})


def _lift_to_bivariate(uni: TruncSeries, position: int, variables, order: int) -> TruncSeries:
    coeffs = {}
    for (j,), c in uni.coeffs.items():
        key = (j, 0) if position == 0 else (0, j)
        coeffs[key] = c
    return TruncSeries(variables, order, coeffs)


def if_bivariate(r: int, order: int) -> dict[int, TruncSeries]:
    """Laurent coefficients in y of IF_r(x+, x-, y), as bivariate series.

    IF_r = F_r(x+, y) F_r(x-, 1/y) - H_r(y) sum_k F_{r,k}(x+) F_{r,k}(x-),
    collected by the power of y from -(r-1) to r-1.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    variables = ("x+-1", "x--1")
    plus = [
        _lift_to_bivariate(frk_shifted_series(r, k, order), 0, variables, order)
        for k in range(r)
    ]
    minus = [
        _lift_to_bivariate(frk_shifted_series(r, k, order), 1, variables, order)
        for k in range(r)
    ]
    zero = TruncSeries(variables, order)
    out: dict[int, TruncSeries] = {j: zero for j in range(-(r - 1), r)}
    for k1 in range(r):
        for k2 in range(r):
            out[k1 - k2] = out[k1 - k2] + plus[k1] * minus[k2]
    cross = zero
    for k in range(r):
        cross = cross + plus[k] * minus[k]
    for j in range(r):
        out[j] = out[j] - cross
    return out

def iif_series(r: int, k: int, order: int) -> TruncSeries:
    """IIF_{r,k}(x+, x-): IF_{r,k} + IF_{r,k-r} for k >= 1, IF_{r,0} for k = 0."""
    if r < 2 or not 0 <= k < r:
        raise ValueError("need r >= 2 and 0 <= k < r")
    parts = if_bivariate(r, order)
    if k == 0:
        return parts[0]
    return parts[k] + parts[k - r]


def f_r_eval_at_root(r: int, l: int, order: int) -> TruncSeries:
    """sum_k F_{r,k}(x) zeta^k about x = 1, zeta = e(l/r) a nontrivial root."""
    if r < 2 or not 1 <= l <= r - 1:
        raise ValueError("need r >= 2 and 1 <= l <= r-1")
    total = TruncSeries(("x-1",), order)
    for k in range(1, r):
        zk = root_of_unity(Fraction(l * k, r))
        total = total + frk_shifted_series(r, k, order).scale(zk)
    return total

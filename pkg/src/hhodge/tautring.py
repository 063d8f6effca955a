"""Truncated free graded ring on psi, kappa and boundary-pushforward symbols.

The ring is free: no intersection-theoretic relations are imposed, so any
identity verified here holds as an identity of universal expressions.
kappa_0 is never stored; it is the scalar 2g-2+n, substituted on sight.
Products across a boundary symbol are undefined and rejected unless the
other factor is a pure scalar.

Coefficients are Fractions, or Cyclotomics where irrational (character
evaluation); rational cyclotomics are demoted so the stored form of every
class is canonical.  RepTautClass carries a VirtualCharacter per monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .cyclo import Cyclotomic
from .graphs import DecoratedCutGraph
from .groups import FiniteGroup
from .repring import VirtualCharacter, trivial_character, zero_character

Scalar = Union[Fraction, Cyclotomic]

__all__ = [
    "RingContext",
    "Monomial",
    "TautClass",
    "RepTautClass",
    "BoundaryProductError",
    "convert_classes",
]


class BoundaryProductError(ValueError):
    pass


@dataclass(frozen=True)
class RingContext:
    g: int
    n: int
    trunc: int

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError("truncation must be >= 0")

    @property
    def kappa0(self) -> int:
        return 2 * self.g - 2 + self.n


@dataclass(frozen=True)
class Monomial:
    psis: tuple[tuple[int, int], ...] = ()
    kappas: tuple[tuple[int, int], ...] = ()
    boundary: Optional[tuple[DecoratedCutGraph, int, int]] = None

    @staticmethod
    def build(psis=(), kappas=(), boundary=None) -> "Monomial":
        ps = tuple(sorted((i, e) for i, e in psis if e))
        ks = tuple(sorted((a, e) for a, e in kappas if e))
        if any(e < 0 for _, e in ps) or any(e < 0 for _, e in ks):
            raise ValueError("negative exponent")
        if any(a < 1 for a, _ in ks):
            raise ValueError("kappa_0 is a scalar, not a generator")
        if boundary is not None and (ps or ks):
            raise BoundaryProductError("boundary symbols do not multiply psi/kappa")
        return Monomial(ps, ks, boundary)

    def degree(self) -> int:
        d = sum(e for _, e in self.psis) + sum(a * e for a, e in self.kappas)
        if self.boundary is not None:
            d += self.boundary[1] + self.boundary[2] + 1
        return d

    def is_unit(self) -> bool:
        return not self.psis and not self.kappas and self.boundary is None

    def mul(self, other: "Monomial") -> "Monomial":
        if self.boundary is not None or other.boundary is not None:
            if self.is_unit():
                return other
            if other.is_unit():
                return self
            raise BoundaryProductError("boundary product undefined")
        ps: dict[int, int] = {}
        for i, e in self.psis + other.psis:
            ps[i] = ps.get(i, 0) + e
        ks: dict[int, int] = {}
        for a, e in self.kappas + other.kappas:
            ks[a] = ks.get(a, 0) + e
        return Monomial.build(ps.items(), ks.items())

    def sort_key(self):
        if self.boundary is None:
            return (0, self.degree(), self.psis, self.kappas, ())
        gc, ap, am = self.boundary
        return (1, self.degree(), self.psis, self.kappas, gc.sort_key() + (ap, am))


UNIT = Monomial()


def _as_scalar(c) -> Scalar:
    if isinstance(c, Cyclotomic):
        r = c.as_rational()
        return r if r is not None else c
    return Fraction(c)


class TautClass:
    """Element of the truncated free graded ring, rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingContext, terms=None):
        self.ring = ring
        clean: dict[Monomial, Scalar] = {}
        if terms:
            for mon, c in terms.items():
                if mon.degree() > ring.trunc:
                    continue
                c = _as_scalar(c)
                if c == 0:
                    continue
                clean[mon] = c
        self.terms = clean

    # constructors

    @staticmethod
    def zero(ring: RingContext) -> "TautClass":
        return TautClass(ring)

    @staticmethod
    def scalar(ring: RingContext, c) -> "TautClass":
        return TautClass(ring, {UNIT: c})

    @staticmethod
    def psi(ring: RingContext, i: int, exponent: int = 1) -> "TautClass":
        if not 1 <= i <= ring.n:
            raise ValueError(f"psi index {i} out of range 1..{ring.n}")
        if exponent == 0:
            return TautClass.scalar(ring, 1)
        return TautClass(ring, {Monomial.build(psis=[(i, exponent)]): Fraction(1)})

    @staticmethod
    def kappa(ring: RingContext, a: int, exponent: int = 1) -> "TautClass":
        if a < 0:
            raise ValueError("kappa index must be >= 0")
        if a == 0:
            return TautClass.scalar(ring, Fraction(ring.kappa0) ** exponent)
        if exponent == 0:
            return TautClass.scalar(ring, 1)
        return TautClass(ring, {Monomial.build(kappas=[(a, exponent)]): Fraction(1)})

    @staticmethod
    def boundary(
        ring: RingContext, gc: DecoratedCutGraph, a_plus: int = 0, a_minus: int = 0
    ) -> "TautClass":
        return TautClass(ring, {Monomial.build(boundary=(gc, a_plus, a_minus)): Fraction(1)})

    # arithmetic

    def _compat(self, other: "TautClass") -> None:
        if self.ring != other.ring:
            raise ValueError("ring contexts differ")

    def __add__(self, other: "TautClass") -> "TautClass":
        self._compat(other)
        merged = dict(self.terms)
        for mon, c in other.terms.items():
            merged[mon] = merged.get(mon, Fraction(0)) + c
        return TautClass(self.ring, merged)

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + other.scale(-1)

    def __neg__(self) -> "TautClass":
        return self.scale(-1)

    def scale(self, c) -> "TautClass":
        return TautClass(self.ring, {m: v * c for m, v in self.terms.items()})

    def _check_boundary_product(self, other: "TautClass") -> None:
        self_bd = any(m.boundary is not None for m in self.terms)
        other_bd = any(m.boundary is not None for m in other.terms)
        if self_bd and not other.is_scalar():
            raise BoundaryProductError("boundary product undefined")
        if other_bd and not self.is_scalar():
            raise BoundaryProductError("boundary product undefined")

    def __mul__(self, other: "TautClass") -> "TautClass":
        self._compat(other)
        self._check_boundary_product(other)
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = m1.mul(m2)
                if mon.degree() > self.ring.trunc:
                    continue
                out[mon] = out.get(mon, Fraction(0)) + c1 * c2
        return TautClass(self.ring, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m.is_unit() for m in self.terms)

    def scalar_part(self) -> Scalar:
        return self.terms.get(UNIT, Fraction(0))

    def degree_part(self, j: int) -> "TautClass":
        return TautClass(self.ring, {m: c for m, c in self.terms.items() if m.degree() == j})

    def max_degree(self) -> int:
        return max((m.degree() for m in self.terms), default=0)

    def truncate(self, order: int) -> "TautClass":
        ring = RingContext(self.ring.g, self.ring.n, order)
        return TautClass(ring, {m: c for m, c in self.terms.items() if m.degree() <= order})

    def map_coefficients(self, fn) -> "TautClass":
        return TautClass(self.ring, {m: fn(c) for m, c in self.terms.items()})

    def parity_dual(self) -> "TautClass":
        """Degree-parity sign: (-1)^j on the degree-j part."""
        return TautClass(
            self.ring, {m: c * (-1) ** m.degree() for m, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TautClass):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))))

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{m}" for m, c in self.sorted_terms())


class RepTautClass:
    """Taut class whose coefficients are virtual characters of a fixed group."""

    __slots__ = ("ring", "group", "terms")

    def __init__(self, ring: RingContext, group: FiniteGroup, terms=None):
        self.ring = ring
        self.group = group
        clean: dict[Monomial, VirtualCharacter] = {}
        if terms:
            for mon, chi in terms.items():
                if mon.degree() > ring.trunc or chi.is_zero():
                    continue
                if chi.group is not group:
                    raise ValueError("coefficient over the wrong group")
                clean[mon] = chi
        self.terms = clean

    @staticmethod
    def zero(ring: RingContext, group: FiniteGroup) -> "RepTautClass":
        return RepTautClass(ring, group)

    @staticmethod
    def constant(ring: RingContext, chi: VirtualCharacter) -> "RepTautClass":
        return RepTautClass(ring, chi.group, {UNIT: chi})

    @staticmethod
    def from_taut(t: TautClass, chi: VirtualCharacter) -> "RepTautClass":
        """Embed a rational class with a fixed representation coefficient."""
        terms = {}
        for mon, c in t.terms.items():
            if isinstance(c, Cyclotomic):
                raise ValueError("cannot embed a cyclotomic-coefficient class")
            terms[mon] = chi.scale(c)
        return RepTautClass(t.ring, chi.group, terms)

    def _compat(self, other: "RepTautClass") -> None:
        if self.ring != other.ring or self.group is not other.group:
            raise ValueError("contexts differ")

    def __add__(self, other: "RepTautClass") -> "RepTautClass":
        self._compat(other)
        merged = dict(self.terms)
        for mon, chi in other.terms.items():
            merged[mon] = merged[mon] + chi if mon in merged else chi
        return RepTautClass(self.ring, self.group, merged)

    def __sub__(self, other: "RepTautClass") -> "RepTautClass":
        return self + other.scale(-1)

    def __neg__(self) -> "RepTautClass":
        return self.scale(-1)

    def scale(self, c) -> "RepTautClass":
        return RepTautClass(
            self.ring, self.group, {m: chi.scale(c) for m, chi in self.terms.items()}
        )

    def __mul__(self, other: "RepTautClass") -> "RepTautClass":
        self._compat(other)
        self_bd = any(m.boundary is not None for m in self.terms)
        other_bd = any(m.boundary is not None for m in other.terms)
        if (self_bd and not other.is_scalar()) or (other_bd and not self.is_scalar()):
            raise BoundaryProductError("boundary product undefined")
        out: dict[Monomial, VirtualCharacter] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = m1.mul(m2)
                if mon.degree() > self.ring.trunc:
                    continue
                prod = c1 * c2
                out[mon] = out[mon] + prod if mon in out else prod
        return RepTautClass(self.ring, self.group, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m.is_unit() for m in self.terms)

    def degree_part(self, j: int) -> "RepTautClass":
        return RepTautClass(
            self.ring, self.group, {m: c for m, c in self.terms.items() if m.degree() == j}
        )

    def map_coefficients(self, fn) -> "RepTautClass":
        return RepTautClass(self.ring, self.group, {m: fn(c) for m, c in self.terms.items()})

    def chi(self, gamma: int) -> TautClass:
        """Character evaluation at a group element, coefficientwise."""
        if not 0 <= gamma < self.group.order:
            raise ValueError("element index out of range")
        return TautClass(
            self.ring, {m: chi.value_at(gamma) for m, chi in self.terms.items()}
        )

    def rank_class(self) -> TautClass:
        return self.chi(0)

    def coefficient(self, mon: Monomial) -> VirtualCharacter:
        return self.terms.get(mon, zero_character(self.group))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepTautClass):
            return NotImplemented
        return self.ring == other.ring and self.group is other.group and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{chi}]*{m}" for m, chi in self.sorted_terms())


def taut_one(ring: RingContext) -> TautClass:
    return TautClass.scalar(ring, 1)


def rep_one(ring: RingContext, G: FiniteGroup) -> RepTautClass:
    return RepTautClass.constant(ring, trivial_character(G))


def convert_classes(direction: str, ring: RingContext, **kwargs) -> TautClass:
    """Rewrite cover-side generators in the base (psi, kappa) basis.

    psi_cover_to_base: psi~_i^e = psi_i^e / |m_i|^e       (needs i, order, exponent)
    kappa_cover_to_base: kappa~_a^e = (|G| kappa_a)^e     (needs a, group_order, exponent)
    kappa_mumford_to_ac: kappa'_a = kappa_a - sum_i psi_i^a   (needs a)
    """
    if direction == "psi_cover_to_base":
        i, order = kwargs["i"], kwargs["order"]
        e = kwargs.get("exponent", 1)
        return TautClass.psi(ring, i, e).scale(Fraction(1, order) ** e)
    if direction == "kappa_cover_to_base":
        a, group_order = kwargs["a"], kwargs["group_order"]
        e = kwargs.get("exponent", 1)
        return TautClass.kappa(ring, a, e).scale(Fraction(group_order) ** e)
    if direction == "kappa_mumford_to_ac":
        a = kwargs["a"]
        out = TautClass.kappa(ring, a)
        for i in range(1, ring.n + 1):
            out = out - TautClass.psi(ring, i, a)
        return out
    raise ValueError(f"unknown conversion {direction!r}")

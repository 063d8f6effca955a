"""Virtual characters with cyclotomic values: the rational representation ring.

Elements of Rep(G) tensor Q are stored as class functions, one cyclotomic
value per conjugacy class.  Induction, restriction, the metric eta, duals
and the trivial-part projection I are all computed from characters alone;
no irreducible decomposition is ever needed.

Sign convention: V_m is the character of <m> on which m acts by
exp(-2*pi*i/|m|), so the value of V_m^k at m^j is e(-k*j/r).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .cyclo import Cyclotomic, root_of_unity
from .groups import FiniteGroup, GroupError, Subgroup, cyclic_subgroup

Rational = Union[int, Fraction]

__all__ = [
    "VirtualCharacter",
    "trivial_character",
    "zero_character",
    "regular_character",
    "cyclic_irrep_char",
    "induce",
    "restrict",
    "eta",
    "trivial_multiplicity",
    "i_g",
    "dual_char",
    "d_mk",
    "perm_character",
    "transport_character",
]


def _as_cyc(v) -> Cyclotomic:
    if isinstance(v, Cyclotomic):
        return v
    return Cyclotomic.rational(v)


class VirtualCharacter:
    """A class function on a finite group with cyclotomic values."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence):
        if len(values) != len(group.classes):
            raise ValueError("one value per conjugacy class required")
        self.group = group
        self.values = tuple(_as_cyc(v) for v in values)

    def value_at(self, element: int) -> Cyclotomic:
        return self.values[self.group.class_of[element]]

    def dim(self) -> Fraction:
        d = self.values[0].as_rational()
        if d is None:
            raise ValueError("character dimension is not rational")
        return d

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def _same_group(self, other: "VirtualCharacter") -> None:
        if self.group is not other.group:
            raise ValueError("characters live over different groups")

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._same_group(other)
        return VirtualCharacter(
            self.group, [a + b for a, b in zip(self.values, other.values)]
        )

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        self._same_group(other)
        return VirtualCharacter(
            self.group, [a - b for a, b in zip(self.values, other.values)]
        )

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.group, [-a for a in self.values])

    def __mul__(self, other) -> "VirtualCharacter":
        if isinstance(other, VirtualCharacter):
            self._same_group(other)
            return VirtualCharacter(
                self.group, [a * b for a, b in zip(self.values, other.values)]
            )
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "VirtualCharacter":
        return VirtualCharacter(self.group, [v * c for v in self.values])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VirtualCharacter)
            and other.group is self.group
            and other.values == self.values
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.values))

    def __repr__(self) -> str:
        return f"VirtualCharacter({list(self.values)!r})"


def trivial_character(G: FiniteGroup) -> VirtualCharacter:
    return VirtualCharacter(G, [1] * len(G.classes))


def zero_character(G: FiniteGroup) -> VirtualCharacter:
    return VirtualCharacter(G, [0] * len(G.classes))


def regular_character(G: FiniteGroup) -> VirtualCharacter:
    """chi at gamma is |G| for the identity and 0 elsewhere."""
    values = [0] * len(G.classes)
    values[G.class_of[0]] = G.order
    return VirtualCharacter(G, values)


def cyclic_irrep_char(G: FiniteGroup, m: int, k: int) -> VirtualCharacter:
    """The character of V_m^k on <m>: value e(-k*j/r) at m^j."""
    H = cyclic_subgroup(G, m)
    r = H.order
    k %= r
    values = [None] * len(H.group.classes)
    x = 0
    for j in range(r):
        internal = H.from_parent[x]
        values[H.group.class_of[internal]] = root_of_unity(Fraction(-k * j, r))
        x = G.table[x][m]
    return VirtualCharacter(H.group, values)


def induce(G: FiniteGroup, H: Subgroup, chi: VirtualCharacter) -> VirtualCharacter:
    """Induced virtual character, via the class-sum induction formula."""
    if H.parent is not G:
        raise GroupError("subgroup does not belong to the ambient group")
    if chi.group is not H.group:
        raise ValueError("character is not over the given subgroup")
    scale = Fraction(G.order, H.order)
    values = []
    for cls in G.classes:
        total = Cyclotomic.rational(0)
        for x in cls:
            if H.contains(x):
                total = total + chi.value_at(H.from_parent[x])
        values.append(total * (scale / len(cls)))
    return VirtualCharacter(G, values)


def restrict(G: FiniteGroup, H: Subgroup, chi: VirtualCharacter) -> VirtualCharacter:
    """Restriction: the value at an H-class is the value at its G-class."""
    if H.parent is not G:
        raise GroupError("subgroup does not belong to the ambient group")
    if chi.group is not G:
        raise ValueError("character is not over the ambient group")
    values = [None] * len(H.group.classes)
    for internal, parent in enumerate(H.to_parent):
        values[H.group.class_of[internal]] = chi.value_at(parent)
    return VirtualCharacter(H.group, values)


def eta(chi1: VirtualCharacter, chi2: VirtualCharacter) -> Fraction:
    """The metric (1/|G|) sum chi1(g) conj(chi2(g)); must come out rational."""
    chi1._same_group(chi2)
    G = chi1.group
    total = Cyclotomic.rational(0)
    for cls, a, b in zip(G.classes, chi1.values, chi2.values):
        total = total + a * b.conjugate() * len(cls)
    value = (total * Fraction(1, G.order)).as_rational()
    if value is None:
        raise ValueError("eta value is not rational; corrupted input")
    return value


def trivial_multiplicity(chi: VirtualCharacter) -> Fraction:
    """Multiplicity of the trivial character: the average of chi over G."""
    G = chi.group
    total = Cyclotomic.rational(0)
    for cls, v in zip(G.classes, chi.values):
        total = total + v * len(cls)
    value = (total * Fraction(1, G.order)).as_rational()
    if value is None:
        raise ValueError("trivial multiplicity is not rational; corrupted input")
    return value


def i_g(chi: VirtualCharacter) -> VirtualCharacter:
    """chi minus its trivial-isotypic part spread over the regular character."""
    return chi - regular_character(chi.group).scale(trivial_multiplicity(chi))


def dual_char(chi: VirtualCharacter) -> VirtualCharacter:
    """Value at gamma is chi at gamma inverse."""
    G = chi.group
    values = [chi.value_at(G.inverse[cls[0]]) for cls in G.classes]
    return VirtualCharacter(G, values)


def d_mk(G: FiniteGroup, W: VirtualCharacter, m: int, k: int) -> Fraction:
    """Multiplicity of V_m^k in the restriction of W to <m>."""
    H = cyclic_subgroup(G, m)
    return eta(cyclic_irrep_char(G, m, k), restrict(G, H, W))


def perm_character(G: FiniteGroup, H: Subgroup) -> VirtualCharacter:
    """C[G/H], the permutation character of the coset action."""
    return induce(G, H, trivial_character(H.group))


def transport_character(chi: VirtualCharacter, theta: Sequence[int]) -> VirtualCharacter:
    """Compose a class function with the inverse of an automorphism."""
    G = chi.group
    theta_inv = [0] * G.order
    for x, y in enumerate(theta):
        theta_inv[y] = x
    return VirtualCharacter(G, [chi.value_at(theta_inv[cls[0]]) for cls in G.classes])

"""Finite groups as explicit multiplication tables, identity at index 0.

Conjugacy classes, centralizers, element orders and inverses are computed
eagerly at build time; instances are immutable afterwards.  Builders accept
a group-spec mini-language (cyclic:N, dihedral:N, sym:N, product(a,b)) or an
explicit Cayley-table document {"names": [...], "table": [[...], ...]}.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

__all__ = [
    "GroupError",
    "FiniteGroup",
    "Subgroup",
    "build_group",
    "conjugacy_data",
    "cyclic_subgroup",
    "generated_subgroup",
    "automorphisms",
]

MAX_SYM = 5


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A group given extensionally by its Cayley table."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
        spec: Optional[str] = None,
        validate: bool = True,
    ):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        if names is None:
            names = [f"g{i}" if i else "e" for i in range(self.order)]
        self.names = tuple(names)
        self.spec = spec
        if len(self.names) != self.order or len(set(self.names)) != self.order:
            raise GroupError("element names must be distinct and match the order")
        if validate:
            self._validate()
        self.inverse = self._inverses()
        self.classes, self.class_of = self._conjugacy_classes()
        self.centralizers = self._centralizers()
        self.element_orders = tuple(self._order_of(i) for i in range(self.order))
        self._subgroups: dict[tuple[int, ...], "Subgroup"] = {}
        self._name_index = {name: i for i, name in enumerate(self.names)}

    # construction helpers

    def _validate(self) -> None:
        n = self.order
        if n == 0:
            raise GroupError("empty table")
        rng = range(n)
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise GroupError("table is not a square over element indices")
        for i in rng:
            if self.table[0][i] != i or self.table[i][0] != i:
                raise GroupError("index 0 is not an identity")
            if sorted(self.table[i]) != list(rng):
                raise GroupError(f"row {i} is not a permutation")
            if sorted(self.table[j][i] for j in rng) != list(rng):
                raise GroupError(f"column {i} is not a permutation")
        t = self.table
        for a in rng:
            for b in rng:
                ab = t[a][b]
                row_ab = t[ab]
                row_a = t[a]
                row_b = t[b]
                for c in rng:
                    if row_ab[c] != row_a[row_b[c]]:
                        raise GroupError("table is not associative")

    def _inverses(self) -> tuple[int, ...]:
        inv = [0] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] == 0:
                    inv[i] = j
                    break
            else:
                raise GroupError(f"element {i} has no inverse")
        return tuple(inv)

    def _conjugacy_classes(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        seen = [False] * self.order
        classes = []
        for m in range(self.order):
            if seen[m]:
                continue
            orbit = {self.conjugate(g, m) for g in range(self.order)}
            for x in orbit:
                seen[x] = True
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: c[0])
        class_of = [0] * self.order
        for ci, cls in enumerate(classes):
            for x in cls:
                class_of[x] = ci
        return tuple(classes), tuple(class_of)

    def _centralizers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(g for g in range(self.order) if self.table[g][m] == self.table[m][g])
            for m in range(self.order)
        )

    def _order_of(self, m: int) -> int:
        k, x = 1, m
        while x != 0:
            x = self.table[x][m]
            k += 1
        return k

    # element arithmetic

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[a], -k)
        x = 0
        for _ in range(k % self.element_orders[a] if a else 0):
            x = self.table[x][a]
        return x

    def conjugate(self, g: int, m: int) -> int:
        return self.table[self.table[g][m]][self.inverse[g]]

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise GroupError(f"unknown element name {name!r}") from None

    def is_abelian(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    # subgroups

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        key = tuple(sorted(set(elements)))
        if key not in self._subgroups:
            self._subgroups[key] = Subgroup(self, key)
        return self._subgroups[key]

    def full_subgroup(self) -> "Subgroup":
        return self.subgroup(range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec or 'table'}, order={self.order})"


class Subgroup:
    """A subgroup of a parent group, with its own reindexed group view."""

    def __init__(self, parent: FiniteGroup, elements: tuple[int, ...]):
        self.parent = parent
        self.elements = elements
        self.order = len(elements)
        elt_set = set(elements)
        if 0 not in elt_set:
            raise GroupError("subgroup must contain the identity")
        for a in elements:
            if parent.inverse[a] not in elt_set:
                raise GroupError("subgroup not closed under inverse")
            for b in elements:
                if parent.table[a][b] not in elt_set:
                    raise GroupError("subgroup not closed under multiplication")
        self.from_parent = {p: i for i, p in enumerate(elements)}
        table = [
            [self.from_parent[parent.table[a][b]] for b in elements] for a in elements
        ]
        self.group = FiniteGroup(
            table,
            names=[parent.names[p] for p in elements],
            spec=None,
            validate=False,
        )
        self.to_parent = elements

    def contains(self, parent_index: int) -> bool:
        return parent_index in self.from_parent

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.elements == self.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={self.elements})"


def cyclic_subgroup(G: FiniteGroup, m: int) -> Subgroup:
    """The subgroup generated by a single element."""
    if not 0 <= m < G.order:
        raise GroupError(f"element index {m} out of range")
    elements = []
    x = 0
    while True:
        elements.append(x)
        x = G.table[x][m]
        if x == 0:
            break
    return G.subgroup(elements)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Closure of a generating set; default G0 for genus-0 contexts."""
    current = {0}
    frontier = set(gens) | {0}
    while frontier:
        new = set()
        for a in frontier:
            current.add(a)
        for a in current:
            for b in current:
                x = G.table[a][b]
                if x not in current:
                    new.add(x)
        frontier = new
    return G.subgroup(current)


def conjugacy_data(G: FiniteGroup) -> dict:
    """Report of classes, centralizer orders and element orders.

    Checks |class(m)| * |Z_G(m)| = |G| for every element.
    """
    for m in range(G.order):
        if len(G.classes[G.class_of[m]]) * len(G.centralizers[m]) != G.order:
            raise GroupError("class equation violated; corrupted table")
    return {
        "order": G.order,
        "classes": [[G.names[x] for x in cls] for cls in G.classes],
        "class_sizes": [len(cls) for cls in G.classes],
        "centralizer_orders": [len(G.centralizers[m]) for m in range(G.order)],
        "element_orders": list(G.element_orders),
    }


# builders

def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic:N needs N >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + ["g" if i == 1 else f"g{i}" for i in range(1, n)]
    return FiniteGroup(table, names, spec=f"cyclic:{n}", validate=False)


def _dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element r^i s^j has index i + n*j."""
    if n < 1:
        raise GroupError("dihedral:N needs N >= 1")
    order = 2 * n

    def mul(x, y):
        i, j = x % n, x // n
        k, l = y % n, y // n
        i2 = (i + (k if j == 0 else -k)) % n
        return i2 + n * ((j + l) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    rot = ["e"] + ["r" if i == 1 else f"r{i}" for i in range(1, n)]
    ref = ["s"] + [f"r{i}s" if i > 1 else "rs" for i in range(1, n)]
    return FiniteGroup(table, rot + ref, spec=f"dihedral:{n}", validate=False)


def _perm_name(p: tuple[int, ...]) -> str:
    n = len(p)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = p[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def _symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_SYM:
        raise GroupError(f"sym:N supports 1 <= N <= {MAX_SYM}")
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
    ]
    return FiniteGroup(table, [_perm_name(p) for p in perms], spec=f"sym:{n}", validate=False)


def _product(A: FiniteGroup, B: FiniteGroup, spec: str) -> FiniteGroup:
    nb = B.order
    order = A.order * nb

    def mul(x, y):
        a1, b1 = divmod(x, nb)
        a2, b2 = divmod(y, nb)
        return A.table[a1][a2] * nb + B.table[b1][b2]

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    names = [f"{A.names[a]}.{B.names[b]}" for a in range(A.order) for b in range(B.order)]
    return FiniteGroup(table, names, spec=spec, validate=False)


def _split_product_args(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    raise GroupError(f"malformed product spec {body!r}")


def build_group(spec) -> FiniteGroup:
    """Build a validated group from a spec string or a Cayley-table document."""
    if isinstance(spec, dict):
        try:
            names = spec["names"]
            table = spec["table"]
        except KeyError as exc:
            raise GroupError(f"Cayley document missing key {exc}") from None
        return FiniteGroup(table, names, spec="table", validate=True)
    if not isinstance(spec, str):
        raise GroupError(f"unsupported group spec {spec!r}")
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        left, right = _split_product_args(spec[len("product(") : -1])
        return _product(build_group(left), build_group(right), spec=spec)
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        try:
            n = int(arg)
        except ValueError:
            raise GroupError(f"bad group size in spec {spec!r}") from None
        if kind == "cyclic":
            return _cyclic(n)
        if kind == "dihedral":
            return _dihedral(n)
        if kind == "sym":
            return _symmetric(n)
    raise GroupError(f"unknown group spec {spec!r}")


# automorphisms

def _generating_sequence(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    closure = {0}
    for x in range(1, G.order):
        if x in closure:
            continue
        gens.append(x)
        closure = set(generated_subgroup(G, gens).elements)
        if len(closure) == G.order:
            break
    return gens


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of G as element-index permutations."""
    gens = _generating_sequence(G)
    if not gens:
        return [(0,)]
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = G.table[x][g]
                if y not in words:
                    words[y] = words[x] + (gi,)
                    new.append(y)
        frontier = new

    def image_of(word: tuple[int, ...], images: Sequence[int]) -> int:
        x = 0
        for gi in word:
            x = G.table[x][images[gi]]
        return x

    autos = []
    candidates = [
        [x for x in range(G.order) if G.element_orders[x] == G.element_orders[g]]
        for g in gens
    ]
    for images in itertools.product(*candidates):
        perm = tuple(image_of(words[x], images) for x in range(G.order))
        if len(set(perm)) != G.order:
            continue
        t = G.table
        if all(
            perm[t[a][b]] == t[perm[a]][perm[b]]
            for a in range(G.order)
            for b in range(G.order)
        ):
            autos.append(perm)
    return autos


def is_automorphism(G: FiniteGroup, theta: Sequence[int]) -> bool:
    if sorted(theta) != list(range(G.order)):
        return False
    t = G.table
    return all(
        theta[t[a][b]] == t[theta[a]][theta[b]]
        for a in range(G.order)
        for b in range(G.order)
    )

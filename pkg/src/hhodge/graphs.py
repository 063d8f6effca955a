"""One-edge stable graphs of type (g, n) with monodromy decorations, cut.

A cut graph is either a loop cut open (one vertex of genus g-1 carrying all
tails plus the two new half-edge tails) or an ordered tree split (vertex 1
carries the + half-edge, vertex 2 the - half-edge).  Each shape is paired
with every group element m_+ as the + decoration; m_- is its inverse.  A
tail-free split with equal genera is its own swap, so it appears once.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .groups import FiniteGroup

__all__ = ["DecoratedCutGraph", "enumerate_cut_graphs", "graph_invariants"]

LOOP = "loop"
TREE = "tree"


@dataclass(frozen=True)
class DecoratedCutGraph:
    """A one-edge stable graph of type (g, n), cut, with decorations."""

    kind: str
    genus1: int
    tails1: tuple[int, ...]
    genus2: Optional[int]
    tails2: Optional[tuple[int, ...]]
    tail_decorations: tuple[int, ...]
    m_plus: int
    m_minus: int
    r_plus: int
    m_plus_self_paired: bool  # whether m_+ is conjugate to its inverse

    def sort_key(self):
        if self.kind == LOOP:
            return (0, 0, (), self.m_plus)
        return (1, self.genus1, self.tails1, self.m_plus)

    def shape_key(self):
        """The undecorated cut shape (forgetting the group decoration)."""
        return (self.kind, self.genus1, self.tails1, self.genus2, self.tails2)

    def describe(self, G: FiniteGroup) -> dict:
        doc = {
            "kind": self.kind,
            "g1": self.genus1,
            "tails1": list(self.tails1),
            "m_plus": G.names[self.m_plus],
        }
        if self.kind == TREE:
            doc["g2"] = self.genus2
            doc["tails2"] = list(self.tails2)
        return doc


def _vertex_stable(g: int, legs: int) -> bool:
    return 2 * g - 2 + legs > 0


def enumerate_cut_graphs(
    g: int, n: int, m: tuple[int, ...], G: FiniteGroup
) -> list[DecoratedCutGraph]:
    """All decorated cut graphs for the stratum (g, n, m), in canonical order."""
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable type: 2g-2+n = {2 * g - 2 + n} <= 0")
    if len(m) != n:
        raise ValueError("monodromy vector length must equal n")
    decorations = tuple(m)
    shapes: list[tuple] = []
    if g >= 1:
        shapes.append((LOOP, g - 1, tuple(range(1, n + 1)), None, None))
    tails = list(range(1, n + 1))
    for g1 in range(g + 1):
        g2 = g - g1
        for size in range(n + 1):
            for chosen in combinations(tails, size):
                t1 = tuple(chosen)
                t2 = tuple(x for x in tails if x not in chosen)
                if not _vertex_stable(g1, len(t1) + 1):
                    continue
                if not _vertex_stable(g2, len(t2) + 1):
                    continue
                shapes.append((TREE, g1, t1, g2, t2))
    graphs = []
    for kind, g1, t1, g2, t2 in shapes:
        for mp in range(G.order):
            mm = G.inverse[mp]
            graphs.append(
                DecoratedCutGraph(
                    kind=kind,
                    genus1=g1,
                    tails1=t1,
                    genus2=g2,
                    tails2=t2,
                    tail_decorations=decorations,
                    m_plus=mp,
                    m_minus=mm,
                    r_plus=G.element_orders[mp],
                    m_plus_self_paired=G.class_of[mp] == G.class_of[mm],
                )
            )
    graphs.sort(key=DecoratedCutGraph.sort_key)
    return graphs


def graph_invariants(gc: DecoratedCutGraph) -> dict:
    """r_+, the underlying-graph automorphism order, and vertex data.

    The automorphism order of the decorated graph is undefined when the
    half-edge swap changes the decoration class (loop with m_+ not conjugate
    to its inverse); it is reported as None in that case.
    """
    if gc.kind == LOOP:
        aut = 2
        vertices = [{"genus": gc.genus1, "tails": list(gc.tails1), "half_edges": 2}]
    else:
        aut = 2 if not gc.tails1 and not gc.tails2 and gc.genus1 == gc.genus2 else 1
        vertices = [
            {"genus": gc.genus1, "tails": list(gc.tails1), "half_edges": 1},
            {"genus": gc.genus2, "tails": list(gc.tails2), "half_edges": 1},
        ]
    decorated_aut: Optional[int]
    if aut == 1:
        decorated_aut = 1
    elif gc.m_plus_self_paired:
        decorated_aut = 2
    else:
        decorated_aut = None
    return {
        "r_plus": gc.r_plus,
        "aut_order": aut,
        "decorated_aut_order": decorated_aut,
        "vertices": vertices,
    }

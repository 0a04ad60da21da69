"""Edge label intersection graph (line graph of the display graph).

An ELIG vertex *is* the display edge it stands for, so an edge set of the
display graph and a vertex set of the ELIG are the same Python object.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .display import TREE_COLORS, DisplayGraph
from .errors import GraphError
from .graph_core import FillEdgeSet, Graph, is_chordal, line_graph, to_dot, vertex_name


@dataclass(frozen=True, eq=False)
class Elig:
    graph: Graph
    display: DisplayGraph

    @property
    def vertex_tree(self) -> dict:
        return self.display.edge_tree

    @cached_property
    def _k_hat(self) -> dict:
        out = {v: set() for v in self.display.graph.vertices}
        for e in self.graph.vertices:
            for v in e:
                out[v].add(e)
        return {v: frozenset(es) for v, es in out.items()}

    def to_dot(self, name="elig") -> str:
        def vattrs(e):
            t = self.vertex_tree[e]
            return {"color": TREE_COLORS[self.display.tree_ids.index(t) % len(TREE_COLORS)], "tree": t}

        return to_dot(self.graph, name, vattrs)


def build_elig(d: DisplayGraph) -> Elig:
    return Elig(line_graph(d.graph), d)


def k_hat(e: Elig, u) -> frozenset:
    """All ELIG vertices (display edges) incident on display vertex ``u``."""
    try:
        return e._k_hat[u]
    except KeyError:
        raise GraphError(f"unknown display vertex {vertex_name(u)}") from None


def is_legal_separator(e: Elig, f) -> bool:
    """Every same-tree subset of ``f`` is a clique in that tree's line graph."""
    for es in e.display.by_tree(f).values():
        for a, b in combinations(es, 2):
            if not (a & b):
                return False
    return True


def same_tree(e: Elig, a, b) -> bool:
    return e.vertex_tree[a] == e.vertex_tree[b]


def is_restricted_triangulation(e: Elig, h: FillEdgeSet) -> bool:
    """Chordal, and no fill edge joins two vertices from the same tree."""
    if h.base != e.graph:
        raise GraphError("fill set is not based on this ELIG")
    for f in h.fill:
        a, b = tuple(f)
        if same_tree(e, a, b):
            return False
    return is_chordal(h.graph).chordal

"""Display graph of a profile: the union of its trees glued at shared labels."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .graph_core import Graph, components, delete_edges, order_key, to_dot
from .phylo_io import PhyloTree, Profile

TREE_COLORS = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


@dataclass(frozen=True, eq=False)
class DisplayGraph:
    """Display graph with per-edge provenance.

    Leaf vertices are label strings; internal vertex ``v`` of the tree with
    id ``t`` becomes ``(t, v)``.  ``edge_tree`` names the source tree of
    every edge.
    """

    graph: Graph
    trees: tuple
    tree_ids: tuple
    edge_tree: dict

    @cached_property
    def leaf_vertices(self) -> frozenset:
        return frozenset(v for v in self.graph.vertices if isinstance(v, str))

    @cached_property
    def internal_vertices(self) -> frozenset:
        return self.graph.vertices - self.leaf_vertices

    @property
    def labels(self) -> frozenset:
        return self.leaf_vertices

    def is_internal_edge(self, e) -> bool:
        return not (e & self.leaf_vertices)

    @cached_property
    def edge_kind(self) -> dict:
        return {e: "internal" if self.is_internal_edge(e) else "non-internal" for e in self.graph.edges}

    @cached_property
    def internal_edges(self) -> frozenset:
        return frozenset(e for e in self.graph.edges if self.is_internal_edge(e))

    @cached_property
    def _tree_edges(self) -> dict:
        out = {t: set() for t in self.tree_ids}
        for e, t in self.edge_tree.items():
            out[t].add(e)
        return {t: frozenset(es) for t, es in out.items()}

    def tree_edges(self, t) -> frozenset:
        return self._tree_edges[t]

    def tree(self, t) -> PhyloTree:
        return self.trees[self.tree_ids.index(t)]

    def by_tree(self, f) -> dict:
        """Group an edge set by source tree (trees without edges omitted)."""
        out = {}
        for e in f:
            out.setdefault(self.edge_tree[e], set()).add(e)
        return out

    def internal_edge_keys(self) -> list:
        """All ``(tree id, internal edge)`` pairs in deterministic order."""
        keys = [(self.edge_tree[e], e) for e in self.internal_edges]
        return sorted(keys, key=lambda k: (k[0], order_key(k[1])))

    def split_by(self, f) -> list[frozenset]:
        """Components of G - F, ordered by least vertex."""
        return components(delete_edges(self.graph, f))

    def to_dot(self, name="display") -> str:
        def vattrs(v):
            return {"shape": "box"} if v in self.leaf_vertices else {"shape": "circle"}

        def eattrs(e):
            t = self.edge_tree[e]
            return {"color": TREE_COLORS[self.tree_ids.index(t) % len(TREE_COLORS)], "tree": t}

        return to_dot(self.graph, name, vattrs, eattrs)


def display_vertex(t: int, v):
    return v if isinstance(v, str) else (t, v)


def build_display_graph(p: Profile | Sequence[PhyloTree], tree_ids: Sequence[int] | None = None) -> DisplayGraph:
    trees = tuple(p.trees if isinstance(p, Profile) else p)
    tree_ids = tuple(range(len(trees)) if tree_ids is None else tree_ids)
    if len(tree_ids) != len(trees) or len(set(tree_ids)) != len(tree_ids):
        raise ValueError("tree_ids must be distinct and match the trees")
    vertices = set()
    edge_tree = {}
    for t, tree in zip(tree_ids, trees):
        vertices.update(display_vertex(t, v) for v in tree.vertices)
        for e in tree.edges:
            de = frozenset(display_vertex(t, v) for v in e)
            if de in edge_tree:
                # only possible for two-leaf trees on the same pair of labels
                raise ValueError(f"trees {edge_tree[de]} and {t} both contribute leaf edge {sorted(de)}")
            edge_tree[de] = t
    graph = Graph(vertices, edge_tree)
    return DisplayGraph(graph, trees, tree_ids, edge_tree)


def partition_indices(trees: Sequence[PhyloTree]) -> list[list[int]]:
    """Group tree positions whose display graph is connected (shared labels)."""
    parent = list(range(len(trees)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for i, tree in enumerate(trees):
        for label in tree.labels:
            if label in owner:
                a, b = find(i), find(owner[label])
                parent[max(a, b)] = min(a, b)
            else:
                owner[label] = i
    groups = {}
    for i in range(len(trees)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def partition_profile(p: Profile) -> list[Profile]:
    return [Profile(tuple(p.trees[i] for i in block)) for block in partition_indices(p.trees)]


def leaves_of_subgraph(d: DisplayGraph, component) -> frozenset:
    return frozenset(v for v in component if v in d.leaf_vertices)

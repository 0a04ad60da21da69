"""Splits: from tree edges, from cuts, and back to trees."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .cuts import CutCertificate, is_legal_minimal_cut, sides
from .display import DisplayGraph, leaves_of_subgraph
from .errors import InternalError, SplitError
from .graph_core import components, delete_edges, vertex_name
from .phylo_io import PhyloTree, normalize, serialize_newick


@dataclass(frozen=True)
class Split:
    """Bipartition of a label set; ``side_a`` holds the least label."""

    side_a: frozenset
    side_b: frozenset

    def __post_init__(self):
        a, b = frozenset(self.side_a), frozenset(self.side_b)
        if not a or not b:
            raise SplitError("both sides of a split must be nonempty")
        if a & b:
            raise SplitError(f"split sides overlap on {sorted(a & b)}")
        if min(b) < min(a):
            a, b = b, a
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @classmethod
    def parse(cls, text: str) -> "Split":
        left, sep, right = text.partition("|")
        if not sep:
            raise SplitError(f"missing '|' in split {text!r}")
        return cls(frozenset(left.split()), frozenset(right.split()))

    @property
    def labels(self) -> frozenset:
        return self.side_a | self.side_b

    @property
    def is_trivial(self) -> bool:
        return min(len(self.side_a), len(self.side_b)) < 2

    def __str__(self):
        return " ".join(sorted(self.side_a)) + " | " + " ".join(sorted(self.side_b))

    def sort_key(self):
        return (sorted(self.side_a), sorted(self.side_b))


def split_of_tree_edge(t: PhyloTree, e) -> Split:
    e = frozenset(e)
    if e not in t.internal_edges:
        raise SplitError(f"{vertex_name(e)} is not an internal edge of the tree")
    parts = components(delete_edges(t.graph, [e]))
    a, b = (frozenset(v for v in p if isinstance(v, str)) for p in parts)
    return Split(a, b)


def splits_of_tree(t: PhyloTree) -> frozenset:
    return frozenset(split_of_tree_edge(t, e) for e in t.internal_edges)


def split_of_cut(d: DisplayGraph, f) -> Split:
    if not is_legal_minimal_cut(d, f):
        raise SplitError("only legal minimal cuts induce splits")
    a, b = (leaves_of_subgraph(d, p) for p in sides(d, f))
    return Split(a, b)


def splits_compatible(s1: Split, s2: Split) -> bool:
    return any(
        not (x & y) for x in (s1.side_a, s1.side_b) for y in (s2.side_a, s2.side_b)
    )


def _branch_labels(adj, v):
    """Labels reachable through each neighbour of ``v``."""
    out = {}
    for w in adj[v]:
        labels = set()
        seen = {v, w}
        stack = [w]
        while stack:
            u = stack.pop()
            if isinstance(u, str):
                labels.add(u)
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        out[w] = frozenset(labels)
    return out


def build_tree_from_splits(labels: Iterable, splits: Iterable[Split]) -> PhyloTree:
    """Refine the star on ``labels`` until it displays every split.

    Trivial splits (one side a single label) hold in every tree and are
    skipped.  Raises ``SplitError`` naming an incompatible pair.
    """
    labels = frozenset(labels)
    splits = sorted(set(splits), key=lambda s: (min(len(s.side_a), len(s.side_b)), s.sort_key()))
    for s in splits:
        if s.labels != labels:
            raise SplitError(f"split {s} is not over the label set {sorted(labels)}")
    for s1, s2 in combinations(splits, 2):
        if not splits_compatible(s1, s2):
            raise SplitError(f"incompatible splits: {s1} and {s2}")
    if len(labels) <= 2:
        return normalize({v: labels - {v} for v in labels})
    adj = {0: set(labels)}
    for x in labels:
        adj[x] = {0}
    fresh = 1
    for s in splits:
        if s.is_trivial:
            continue
        small, large = sorted((s.side_a, s.side_b), key=lambda side: (len(side), sorted(side)))
        for v in [u for u in adj if not isinstance(u, str)]:
            branches = _branch_labels(adj, v)
            inside = [w for w, ls in branches.items() if ls <= small]
            outside = [w for w, ls in branches.items() if ls <= large]
            if len(inside) + len(outside) != len(branches):
                continue
            if len(inside) >= 2 and len(outside) >= 2:
                w = fresh
                fresh += 1
                adj[w] = {v}
                adj[v].add(w)
                for x in inside:
                    adj[v].discard(x)
                    adj[x].discard(v)
                    adj[x].add(w)
                    adj[w].add(x)
                break
            if len(inside) == 1 or len(outside) == 1:
                break  # an existing edge already realizes the split
        else:
            raise InternalError(f"no vertex can be refined for split {s}")
    return normalize(adj)


def restrict(s: PhyloTree, y: Iterable) -> PhyloTree:
    """The minimal subtree spanning ``y`` with degree-2 vertices suppressed."""
    y = frozenset(y)
    if not y:
        raise SplitError("cannot restrict to an empty label set")
    unknown = y - s.labels
    if unknown:
        raise SplitError(f"unknown labels {sorted(unknown)}")
    keep = s.vertices - (s.labels - y)
    adj = {v: s.neighbors(v) & keep for v in keep}
    return normalize(adj)


def displays(s: PhyloTree, t: PhyloTree) -> bool:
    """Whether contracting edges of ``s`` restricted to L(t) can yield ``t``."""
    if not t.labels <= s.labels:
        raise SplitError(f"labels {sorted(t.labels - s.labels)} are missing from the supertree")
    return splits_of_tree(t) <= splits_of_tree(restrict(s, t.labels))


def splits_of_certificate(d: DisplayGraph, c: CutCertificate) -> frozenset:
    return frozenset(split_of_cut(d, f) for f in c.cuts)


def supertree_from_certificate(d: DisplayGraph, c: CutCertificate) -> PhyloTree:
    splits = splits_of_certificate(d, c)
    tree = build_tree_from_splits(d.labels, (s for s in splits if not s.is_trivial))
    for t, source in zip(d.tree_ids, d.trees):
        if not displays(tree, source):
            raise InternalError(
                f"supertree {serialize_newick(tree)} does not display input tree {t}", tree
            )
    return tree


def format_splits(splits: Iterable[Split]) -> str:
    return "".join(f"{s}\n" for s in sorted(splits, key=Split.sort_key))

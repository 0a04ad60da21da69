"""Unrooted phylogenetic trees and their Newick representation.

A tree's leaf vertices *are* their labels (strings); internal vertices are
positive ints.  Trees are always normalized: no unlabeled vertex of degree
below three survives, and internal vertices are numbered 1..m in the order a
canonical traversal meets them, so equal topologies get equal numbering.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import NewickError
from .graph_core import Graph, components, sorted_vertices

_FORBIDDEN = set("(),;:[]'")


def check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise ValueError(f"invalid label {label!r}: must be a nonempty string")
    bad = [c for c in label if c in _FORBIDDEN or c.isspace()]
    if bad:
        raise ValueError(f"invalid label {label!r}: contains {bad[0]!r}")
    return label


@dataclass(frozen=True)
class PhyloTree:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        g = self.graph
        if not self.labels:
            raise ValueError("a tree needs at least one leaf")
        if len(self.edges) != len(self.vertices) - 1 or len(components(g)) != 1:
            raise ValueError("not a tree: must be connected and acyclic")
        for v in self.vertices:
            if isinstance(v, str):
                check_label(v)
                if g.degree(v) > 1:
                    raise ValueError(f"labelled vertex {v} is not a leaf")
            elif isinstance(v, int) and not isinstance(v, bool):
                if g.degree(v) < 3:
                    raise ValueError(f"internal vertex {v} has degree {g.degree(v)}")
            else:
                raise ValueError(f"unsupported vertex id {v!r}")

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "PhyloTree":
        """Build a tree without renumbering (used for hand-written fixtures)."""
        g = Graph.from_edges(edges, vertices)
        return cls(g.vertices, g.edges)

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    @cached_property
    def labels(self) -> frozenset:
        return frozenset(v for v in self.vertices if isinstance(v, str))

    @property
    def leaf_labels(self) -> dict:
        # leaves are named by their labels, so the labelling map is the identity
        return {v: v for v in self.labels}

    @cached_property
    def internal_vertices(self) -> frozenset:
        return self.vertices - self.labels

    @cached_property
    def internal_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if not (e & self.labels))

    def neighbors(self, v):
        return self.graph.neighbors(v)

    def __repr__(self):
        return f"PhyloTree({serialize_newick(self)!r})"


@dataclass(frozen=True)
class Profile:
    trees: tuple

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        if not self.trees:
            raise ValueError("a profile needs at least one tree")

    @property
    def labels(self) -> frozenset:
        return frozenset().union(*(t.labels for t in self.trees))

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __getitem__(self, i):
        return self.trees[i]


def normalize(adj: dict) -> PhyloTree:
    """Suppress degree-2 and prune dangling unlabeled vertices, then renumber.

    ``adj`` maps vertex -> iterable of neighbours; string vertices are leaves.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    pending = [v for v in adj if not isinstance(v, str)]
    while pending:
        v = pending.pop()
        if v not in adj or isinstance(v, str):
            continue
        ns = adj[v]
        if len(ns) >= 3:
            continue
        del adj[v]
        for w in ns:
            adj[w].discard(v)
        if len(ns) == 2:
            x, y = ns
            adj[x].add(y)
            adj[y].add(x)
        pending.extend(w for w in ns if not isinstance(w, str))
    if not any(isinstance(v, str) for v in adj):
        raise ValueError("tree has no leaves")
    return _renumber(adj)


def _renumber(adj: dict) -> PhyloTree:
    root, children = _canonical_rooting(adj)
    rename = {}
    counter = 0
    stack = [root]
    while stack:
        v = stack.pop()
        if not isinstance(v, str):
            counter += 1
            rename[v] = counter
        stack.extend(reversed(children[v]))
    name = lambda v: v if isinstance(v, str) else rename[v]
    edges = {frozenset((name(v), name(w))) for v, ns in adj.items() for w in ns}
    return PhyloTree(frozenset(name(v) for v in adj), edges)


def _canonical_rooting(adj: dict):
    """Root at the neighbour of the least label; order children by least label."""
    least = min(v for v in adj if isinstance(v, str))
    if len(adj) <= 2:
        root = least
    else:
        (root,) = adj[least]
    parent = {root: None}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    min_label = {}
    for v in reversed(order):
        own = [v] if isinstance(v, str) else []
        below = [min_label[w] for w in adj[v] if parent.get(w) == v]
        min_label[v] = min(own + below)
    children = {
        v: sorted((w for w in adj[v] if parent.get(w) == v), key=min_label.__getitem__)
        for v in order
    }
    return root, children


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.counter = 0
        self.adj: dict = {}

    def error(self, message, pos=None):
        raise NewickError(message, self.pos if pos is None else pos)

    def skip(self):
        text = self.text
        while self.pos < len(text):
            c = text[self.pos]
            if c.isspace():
                self.pos += 1
            elif c == "[":
                end = text.find("]", self.pos)
                if end < 0:
                    self.error("unterminated comment")
                self.pos = end + 1
            else:
                break

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def token(self) -> str:
        self.skip()
        text = self.text
        if self.pos < len(text) and text[self.pos] == "'":
            end = text.find("'", self.pos + 1)
            if end < 0:
                self.error("unterminated quoted label")
            word = text[self.pos + 1 : end]
            start, self.pos = self.pos, end + 1
        else:
            start = self.pos
            while self.pos < len(text) and not (text[self.pos] in "(),;:[" or text[self.pos].isspace()):
                self.pos += 1
            word = text[start : self.pos]
        if word:
            try:
                check_label(word)
            except ValueError as exc:
                self.error(str(exc), start)
        return word

    def branch_length(self):
        if self.peek() == ":":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in "(),;:[" and not self.text[self.pos].isspace():
                self.pos += 1
            try:
                float(self.text[start : self.pos])
            except ValueError:
                self.error("malformed branch length", start)

    def add_leaf(self, label, pos):
        if label in self.adj:
            self.error(f"duplicate leaf label {label!r}", pos)
        self.adj[label] = set()
        return label

    def subtree(self):
        if self.peek() == "(":
            self.pos += 1
            self.counter += 1
            node = self.counter
            self.adj[node] = set()
            while True:
                child = self.subtree()
                self.adj[node].add(child)
                self.adj[child].add(node)
                c = self.peek()
                if c == ",":
                    self.pos += 1
                elif c == ")":
                    self.pos += 1
                    break
                else:
                    self.error("expected ',' or ')'")
            self.token()  # internal node name, discarded
        else:
            self.skip()
            start = self.pos
            label = self.token()
            if not label:
                self.error("expected a leaf label or '('")
            node = self.add_leaf(label, start)
        self.branch_length()
        return node

    def tree(self) -> PhyloTree:
        self.adj = {}
        self.counter = 0
        self.subtree()
        if self.peek() != ";":
            self.error("expected ';'")
        self.pos += 1
        try:
            return normalize(self.adj)
        except ValueError as exc:
            self.error(str(exc))


def parse_newick(text: str) -> PhyloTree:
    """Parse exactly one Newick statement."""
    p = _Parser(text)
    tree = p.tree()
    if p.peek():
        p.error("trailing text after ';'")
    return tree


def parse_profile(text: str) -> Profile:
    """Parse any number of ';'-terminated Newick statements."""
    p = _Parser(text)
    trees = []
    while p.peek():
        trees.append(p.tree())
    if not trees:
        raise NewickError("no trees found", 0)
    return Profile(tuple(trees))


def read_profile(paths: Sequence) -> Profile:
    """Concatenate the trees of several files; ``-`` reads standard input."""
    trees = []
    for path in paths:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text(encoding="utf-8")
        try:
            trees.extend(parse_profile(text).trees)
        except NewickError as exc:
            raise NewickError(f"{path}: {exc.message}", exc.position) from exc
    return Profile(tuple(trees))


def serialize_newick(tree: PhyloTree) -> str:
    adj = {v: tree.neighbors(v) for v in tree.vertices}
    if len(adj) == 1:
        return f"{next(iter(adj))};"
    if len(adj) == 2:
        a, b = sorted_vertices(adj)
        return f"({a},{b});"
    root, children = _canonical_rooting(adj)

    def write(v):
        if isinstance(v, str):
            return v
        return "(" + ",".join(write(w) for w in children[v]) + ")"

    return write(root) + ";"


def tree_isomorphic(t1: PhyloTree, t2: PhyloTree) -> bool:
    """Label-preserving isomorphism, via the canonical Newick string."""
    return serialize_newick(t1) == serialize_newick(t2)

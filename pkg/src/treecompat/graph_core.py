"""Small undirected-graph kernel.

Vertices are opaque hashable tokens.  Edges are ``frozenset`` pairs, which
lets the edges of one graph serve directly as the vertices of its line graph.
Everything here is meant for desk-scale graphs (tens of vertices).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable

from .errors import BudgetExceeded, GraphError

Vertex = Hashable
Edge = frozenset

DEFAULT_CLIQUE_BUDGET = 10**6


def order_key(v):
    """Total order over the vertex tokens used in this package.

    Handles ints, strings, tuples and frozensets (recursively), so display
    vertices, line-graph vertices and edge sets can all be sorted.
    """
    if isinstance(v, bool):
        return (0, int(v), "", ())
    if isinstance(v, int):
        return (0, v, "", ())
    if isinstance(v, str):
        return (1, 0, v, ())
    if isinstance(v, tuple):
        return (2, len(v), "", tuple(order_key(x) for x in v))
    if isinstance(v, (frozenset, set)):
        return (3, len(v), "", tuple(sorted(order_key(x) for x in v)))
    return (4, 0, repr(v), ())


def sorted_vertices(vs):
    return sorted(vs, key=order_key)


def edge(u, v) -> Edge:
    if u == v:
        raise GraphError(f"loop at {u!r}")
    return frozenset((u, v))


def vertex_name(v) -> str:
    """Human-readable, collision-free name used in DOT and JSON output."""
    if isinstance(v, str):
        return v
    if isinstance(v, tuple) and len(v) == 2 and all(isinstance(x, int) for x in v):
        return f"{v[0]}:{v[1]}"
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(vertex_name(x) for x in sorted_vertices(v)) + "}"
    return str(v)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_adj", "_edges")

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        adj = {v: set() for v in vertices}
        for e in edges:
            u, v = _ends(e)
            if u not in adj or v not in adj:
                raise GraphError(f"edge {vertex_name(frozenset(e))} has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = None

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        edges = [frozenset(e) for e in edges]
        vs = set(vertices)
        for e in edges:
            vs.update(e)
        return cls(vs, edges)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset:
        if self._edges is None:
            self._edges = frozenset(
                frozenset((u, v)) for u, ns in self._adj.items() for v in ns
            )
        return self._edges

    def neighbors(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {vertex_name(v)}") from None

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u, v) -> bool:
        return v in self._adj.get(u, ())

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self):
        return iter(self._adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(|V|={len(self._adj)}, |E|={len(self.edges)})"


def _ends(e):
    ends = tuple(e)
    if len(ends) != 2:
        raise GraphError(f"not an edge between two distinct vertices: {e!r}")
    return ends


@dataclass(frozen=True)
class FillEdgeSet:
    """A base graph plus fill-in edges that are not already in it."""

    base: Graph
    fill: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        fill = frozenset(frozenset(e) for e in self.fill)
        for e in fill:
            u, v = _ends(e)
            if u not in self.base or v not in self.base:
                raise GraphError(f"fill edge {vertex_name(e)} leaves the base vertex set")
            if e in self.base.edges:
                raise GraphError(f"fill edge {vertex_name(e)} is already a base edge")
        object.__setattr__(self, "fill", fill)

    @property
    def graph(self) -> Graph:
        return Graph(self.base.vertices, self.base.edges | self.fill)


def components(g: Graph) -> list[frozenset]:
    """Connected components, ordered by their least vertex."""
    seen = set()
    blocks = []
    for start in sorted_vertices(g.vertices):
        if start in seen:
            continue
        block = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in block:
                    block.add(w)
                    queue.append(w)
        seen |= block
        blocks.append(frozenset(block))
    return blocks


def component_index(g: Graph) -> dict:
    """Map each vertex to the position of its component in ``components(g)``."""
    index = {}
    for i, block in enumerate(components(g)):
        for v in block:
            index[v] = i
    return index


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def delete_edges(g: Graph, f: Iterable) -> Graph:
    f = frozenset(frozenset(e) for e in f)
    unknown = f - g.edges
    if unknown:
        raise GraphError(f"unknown edge {vertex_name(next(iter(unknown)))}")
    return Graph(g.vertices, g.edges - f)


def delete_vertices(g: Graph, u: Iterable) -> Graph:
    u = frozenset(u)
    unknown = u - g.vertices
    if unknown:
        raise GraphError(f"unknown vertex {vertex_name(next(iter(unknown)))}")
    return Graph(g.vertices - u, (e for e in g.edges if not (e & u)))


def induced_subgraph(g: Graph, vs: Iterable) -> Graph:
    vs = frozenset(vs)
    return delete_vertices(g, g.vertices - vs)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g``; adjacent iff they share an endpoint."""
    adjacent = set()
    for v in g.vertices:
        incident = [frozenset((v, w)) for w in g.neighbors(v)]
        for a, b in combinations(incident, 2):
            adjacent.add(frozenset((a, b)))
    return Graph(g.edges, adjacent)


@dataclass(frozen=True)
class Chordality:
    """Result of a chordality test.

    ``ordering`` is a perfect elimination ordering when ``chordal`` is true;
    otherwise ``cycle`` lists the vertices of a chordless cycle (length >= 4).
    """

    chordal: bool
    ordering: tuple = ()
    cycle: tuple = ()

    def __bool__(self):
        return self.chordal


def mcs_order(g: Graph) -> list:
    """Maximum cardinality search visit order (ties broken by ``order_key``)."""
    weight = {v: 0 for v in g.vertices}
    order = []
    remaining = set(g.vertices)
    while remaining:
        best = max(weight[v] for v in remaining)
        v = min((u for u in remaining if weight[u] == best), key=order_key)
        remaining.discard(v)
        order.append(v)
        for w in g.neighbors(v):
            if w in remaining:
                weight[w] += 1
    return order


def is_chordal(g: Graph) -> Chordality:
    order = mcs_order(g)
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = sorted_vertices(w for w in g.neighbors(v) if position[w] < position[v])
        for x, y in combinations(earlier, 2):
            if not g.has_edge(x, y):
                cycle = _cycle_through(g, v, x, y) or find_chordless_cycle(g)
                return Chordality(False, cycle=tuple(cycle))
    return Chordality(True, ordering=tuple(reversed(order)))


def _cycle_through(g: Graph, v, x, y):
    """Chordless cycle v, x, ..., y if x and y connect outside N[v]."""
    blocked = (g.neighbors(v) | {v}) - {x, y}
    parent = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for w in sorted_vertices(g.neighbors(u)):
            if w in blocked or w in parent:
                continue
            if u == x and w == y:
                continue
            parent[w] = u
            queue.append(w)
    if y not in parent:
        return None
    path = []
    u = y
    while u is not None:
        path.append(u)
        u = parent[u]
    path.reverse()
    return [v] + path


def find_chordless_cycle(g: Graph):
    """Any chordless cycle of length >= 4, or None if ``g`` is chordal."""
    for v in sorted_vertices(g.vertices):
        for x, y in combinations(sorted_vertices(g.neighbors(v)), 2):
            if g.has_edge(x, y):
                continue
            cycle = _cycle_through(g, v, x, y)
            if cycle:
                return cycle
    return None


def maximal_cliques(g: Graph, budget: int = DEFAULT_CLIQUE_BUDGET) -> list[frozenset]:
    """Bron-Kerbosch with Tomita pivoting; result sorted deterministically."""
    found = []
    steps = 0

    def expand(r, p, x):
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded("maximal clique enumeration", budget)
        if not p and not x:
            found.append(frozenset(r))
            return
        pivot = min(p | x, key=lambda u: (-len(g.neighbors(u) & p), order_key(u)))
        for v in sorted_vertices(p - g.neighbors(pivot)):
            ns = g.neighbors(v)
            expand(r | {v}, p & ns, x & ns)
            p = p - {v}
            x = x | {v}

    if g.vertices:
        expand(frozenset(), frozenset(g.vertices), frozenset())
    return sorted(found, key=order_key)


def saturate(g: Graph, families: Iterable[Iterable]) -> Graph:
    """Make every given vertex set a clique."""
    extra = set()
    for fam in families:
        fam = frozenset(fam)
        unknown = fam - g.vertices
        if unknown:
            raise GraphError(f"family member {vertex_name(next(iter(unknown)))} is not a vertex")
        for a, b in combinations(fam, 2):
            extra.add(frozenset((a, b)))
    return Graph(g.vertices, g.edges | extra)


def is_clique(g: Graph, vs) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(vs, 2))


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "G", vertex_attrs=None, edge_attrs=None) -> str:
    """Render ``g`` as a DOT ``graph`` with deterministic ordering.

    ``vertex_attrs`` and ``edge_attrs`` map a vertex or an edge to a dict of
    DOT attributes.
    """
    vertex_attrs = vertex_attrs or (lambda v: {})
    edge_attrs = edge_attrs or (lambda e: {})
    lines = [f"graph {_quote(name)} {{"]
    for v in sorted_vertices(g.vertices):
        lines.append(f"  {_quote(vertex_name(v))}{_attrs(vertex_attrs(v))};")
    for e in sorted(g.edges, key=order_key):
        a, b = sorted_vertices(e)
        lines.append(f"  {_quote(vertex_name(a))} -- {_quote(vertex_name(b))}{_attrs(edge_attrs(e))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _attrs(attrs) -> str:
    if not attrs:
        return ""
    return " [" + ", ".join(f"{k}={_quote(str(v))}" for k, v in sorted(attrs.items())) + "]"

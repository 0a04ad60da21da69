"""Brute-force ground truth for desk-scale instances.

Nothing here reuses the cut or split machinery: compatibility is decided by
enumerating binary topologies with their own bitmask split arithmetic, and
cuts/separators are checked straight from their definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetExceeded, CapExceeded
from .graph_core import Graph, components, order_key, sorted_vertices
from .phylo_io import PhyloTree, Profile, normalize, serialize_newick


@dataclass(frozen=True)
class OracleBudget:
    max_labels: int = 7
    max_topologies: int = 10**6

    def __post_init__(self):
        if self.max_labels <= 0 or self.max_topologies <= 0:
            raise ValueError("oracle budgets must be positive")


_memo: dict = {}


def _tree_split_masks(tree: PhyloTree, bit: dict) -> list[int]:
    """One side (as a bitmask) of every internal edge of ``tree``."""
    out = []
    g = tree.graph
    for e in tree.internal_edges:
        u, v = tuple(e)
        seen = {u, v}
        stack = [u]
        mask = 0
        while stack:
            x = stack.pop()
            if isinstance(x, str):
                mask |= bit[x]
            for w in g.neighbors(x):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(mask)
    return out


def _restricted(masks, within: int) -> frozenset:
    """Splits restricted to ``within``, both sides >= 2, as canonical masks."""
    out = set()
    for m in masks:
        a = m & within
        b = within & ~m
        if bin(a).count("1") >= 2 and bin(b).count("1") >= 2:
            out.add(min(a, b))
    return frozenset(out)


def _edge_masks(edges, leaf_bit, n_nodes):
    """Split side for each edge of a partial binary tree (edge list form)."""
    adj = [[] for _ in range(n_nodes)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    out = []
    for u, v in edges:
        mask = 0
        seen = {u, v}
        stack = [u]
        while stack:
            x = stack.pop()
            mask |= leaf_bit.get(x, 0)
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(mask)
    return out


def brute_force_compatible(p: Profile, budget: OracleBudget = OracleBudget()):
    """A binary supertree displaying every tree of ``p``, or None.

    Leaves are inserted one at a time onto every edge; a partial tree is
    abandoned as soon as it fails to display an input tree restricted to the
    labels inserted so far (restriction preserves displaying, so no
    solution is lost).
    """
    trees = tuple(p.trees if isinstance(p, Profile) else p)
    key = (tuple(serialize_newick(t) for t in trees), budget)
    if key in _memo:
        return _memo[key]
    labels = sorted(frozenset().union(*(t.labels for t in trees)))
    n = len(labels)
    if n > budget.max_labels:
        raise CapExceeded("brute-force compatibility", n, budget.max_labels)
    if n <= 3:
        _memo[key] = _star(labels)
        return _memo[key]
    bit = {x: 1 << i for i, x in enumerate(labels)}
    tree_masks = [(_tree_split_masks(t, bit), sum(bit[x] for x in t.labels)) for t in trees]
    prefix = [sum(1 << i for i in range(k)) for k in range(n + 1)]
    # wanted[k][j]: splits of tree j restricted to the first k labels
    wanted = [[_restricted(ms, lm & prefix[k]) for ms, lm in tree_masks] for k in range(n + 1)]
    # node ids: leaves 0..n-1 (label index), internal nodes n, n+1, ...
    leaf_bit = {i: 1 << i for i in range(n)}
    visited = 0

    def ok(edges, k, n_nodes):
        masks = _edge_masks(edges, leaf_bit, n_nodes)
        for (_, lm), want in zip(tree_masks, wanted[k]):
            if want and not want <= _restricted(masks, lm & prefix[k]):
                return False
        return True

    def grow(edges, k, n_nodes):
        nonlocal visited
        visited += 1
        if visited > budget.max_topologies:
            raise BudgetExceeded("brute-force compatibility", budget.max_topologies)
        if not ok(edges, k, n_nodes):
            return None
        if k == n:
            return edges
        w = n_nodes
        for i, (u, v) in enumerate(edges):
            grown = edges[:i] + edges[i + 1 :] + [(u, w), (w, v), (w, k)]
            found = grow(grown, k + 1, n_nodes + 1)
            if found is not None:
                return found
        return None

    start = [(0, n), (1, n), (2, n)]
    found = grow(start, 3, n + 1)
    if found is None:
        result = None
    else:
        name = lambda i: labels[i] if i < n else i
        adj = {}
        for u, v in found:
            adj.setdefault(name(u), set()).add(name(v))
            adj.setdefault(name(v), set()).add(name(u))
        result = normalize(adj)
    _memo[key] = result
    return result


def _star(labels) -> PhyloTree:
    labels = list(labels)
    if len(labels) <= 2:
        return normalize({x: set(labels) - {x} for x in labels})
    adj = {x: {0} for x in labels}
    adj[0] = set(labels)
    return normalize(adj)


def count_binary_topologies(n: int) -> int:
    """(2n-5)!! for n >= 3."""
    out = 1
    for k in range(3, 2 * n - 4, 2):
        out *= k
    return out


def enumerate_binary_trees(labels):
    """Every unrooted binary tree on ``labels`` (sequential leaf insertion)."""
    labels = sorted(labels)
    n = len(labels)
    if n <= 3:
        yield _star(labels)
        return

    def grow(edges, k, w):
        if k == n:
            adj = {}
            for u, v in edges:
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
            yield normalize(adj)
            return
        for i, (u, v) in enumerate(edges):
            yield from grow(edges[:i] + edges[i + 1 :] + [(u, w), (w, v), (w, labels[k])], k + 1, w + 1)

    yield from grow([(labels[0], 1), (labels[1], 1), (labels[2], 1)], 3, 2)


def _disconnects(g: Graph, f) -> bool:
    return len(components(Graph(g.vertices, g.edges - f))) > 1


def brute_force_minimal_cuts(g: Graph, max_vertices: int = 16) -> list[frozenset]:
    """Minimal cuts straight from the definition.

    Candidates are the edge boundaries of all vertex bipartitions; each is
    kept iff it disconnects ``g`` and no edge can be dropped from it.
    """
    vertices = sorted_vertices(g.vertices)
    if len(vertices) > max_vertices:
        raise CapExceeded("brute-force minimal cuts", len(vertices), max_vertices)
    if len(vertices) < 2:
        return []
    root, rest = vertices[0], vertices[1:]
    found = set()
    for r in range(len(rest)):
        for combo in combinations(rest, r):
            a = {root, *combo}
            f = frozenset(e for e in g.edges if len(e & a) == 1)
            if not f or f in found:
                continue
            if _disconnects(g, f) and not any(_disconnects(g, f - {e}) for e in f):
                found.add(f)
    return sorted(found, key=order_key)


def brute_force_minimal_separators(g: Graph, max_vertices: int = 14) -> list[frozenset]:
    """Minimal a-b separators for some nonadjacent a, b, by subset search.

    U separates a from b iff they land in different components of G - U;
    U - {x} still does iff x misses one of those two components.  Both
    facts depend only on the components, so each subset is tested once per
    component pair.
    """
    vertices = sorted_vertices(g.vertices)
    if len(vertices) > max_vertices:
        raise CapExceeded("brute-force minimal separators", len(vertices), max_vertices)
    out = []
    for r in range(len(vertices) + 1):
        for combo in combinations(vertices, r):
            u = frozenset(combo)
            rest = Graph(g.vertices - u, (e for e in g.edges if not (e & u)))
            comps = components(rest)
            touches = [{x for x in u if g.neighbors(x) & c} for c in comps]
            if any(len(touches[i] & touches[j]) == len(u) for i, j in combinations(range(len(comps)), 2)):
                out.append(u)
    return sorted(out, key=order_key)

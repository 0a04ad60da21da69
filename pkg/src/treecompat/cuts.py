"""Minimal cuts of the display graph and the complete-set compatibility test.

An edge cut is a ``frozenset`` of display edges.  Because ELIG vertices are
display edges, the same object is also a vertex set of the ELIG; the
``separator_view``/``cut_view`` pair only documents that reading.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .display import DisplayGraph
from .elig import Elig, is_legal_separator
from .errors import BudgetExceeded, CapExceeded, GraphError, InternalError
from .graph_core import (
    Graph,
    component_index,
    components,
    delete_edges,
    delete_vertices,
    order_key,
    sorted_vertices,
    vertex_name,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_CUT_VERTICES = 24
DEFAULT_SEARCH_BUDGET = 10**6
DEFAULT_SUBSET_BUDGET = 2 * 10**6


def as_cut(f: Iterable) -> frozenset:
    return frozenset(frozenset(e) for e in f)


def cut_key(f):
    """Sort key: by size, then lexicographically by edge."""
    return order_key(frozenset(f))


def _check_edges(d: DisplayGraph, f: frozenset):
    unknown = f - d.graph.edges
    if unknown:
        raise GraphError(f"unknown edge {vertex_name(next(iter(unknown)))}")


def sides(d: DisplayGraph, f) -> list[frozenset]:
    f = as_cut(f)
    _check_edges(d, f)
    return components(delete_edges(d.graph, f))


def is_minimal_cut(d: DisplayGraph, f) -> bool:
    f = as_cut(f)
    if not f:
        return False
    _check_edges(d, f)
    index = component_index(delete_edges(d.graph, f))
    if len(set(index.values())) != 2:
        return False
    return all(len({index[v] for v in e}) == 2 for e in f)


def lc1_holds(d: DisplayGraph, f) -> bool:
    """Per tree, the edges in ``f`` pairwise share a vertex.

    Edges of a tree that pairwise intersect always share one common vertex,
    so this is the same as asking for a common endpoint.
    """
    for es in d.by_tree(f).values():
        if len(es) > 1 and not frozenset.intersection(*es):
            return False
    return True


def is_legal_cut(d: DisplayGraph, f) -> bool:
    parts = sides(d, f)
    if len(parts) < 2:
        return False
    if not lc1_holds(d, f):
        return False
    # a connected component has an edge iff it has two vertices
    return all(len(p) >= 2 for p in parts)


def is_legal_minimal_cut(d: DisplayGraph, f) -> bool:
    return is_minimal_cut(d, f) and is_legal_cut(d, f)


def _meets_at_most_one(index: dict, f: frozenset, other: frozenset) -> bool:
    # an edge outside f lies inside a single component of G - f
    return len({index[next(iter(e))] for e in other - f}) <= 1


def parallel_one_way(d: DisplayGraph, f1, f2) -> bool:
    """G - F1 has at most one component containing an edge of F2."""
    f1, f2 = as_cut(f1), as_cut(f2)
    index = component_index(delete_edges(d.graph, f1))
    return _meets_at_most_one(index, f1, f2)


def are_parallel_cuts(d: DisplayGraph, f1, f2) -> bool:
    """Parallelism tested in both directions."""
    forward = parallel_one_way(d, f1, f2)
    backward = parallel_one_way(d, f2, f1)
    if forward != backward:
        log.info("one-way parallelism differs by direction for %s / %s", _fmt(f1), _fmt(f2))
    return forward and backward


def _fmt(f) -> str:
    return "{" + ", ".join(vertex_name(e) for e in sorted(f, key=order_key)) + "}"


# -- enumeration ------------------------------------------------------------


def _bonds(g: Graph, edge_tree: dict | None = None):
    """Yield every vertex set A (containing the least vertex) such that A and
    V - A are both nonempty and connected; delta(A) is then a minimal cut.

    With ``edge_tree`` given, branches are pruned as soon as the edges already
    forced into the cut violate the per-tree common-vertex condition.
    """
    vertices = sorted_vertices(g.vertices)
    if len(vertices) < 2:
        return
    root = vertices[0]
    nbr = {v: g.neighbors(v) for v in vertices}

    def x_in_one_component(a, x):
        if not x:
            return True
        start = next(iter(x))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in nbr[u]:
                if w not in a and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return x <= seen

    def legal_after(forced, new_edges):
        if edge_tree is None:
            return True
        for e in new_edges:
            t = edge_tree[e]
            for other in forced.get(t, ()):
                if not (e & other):
                    return False
        return True

    def add_forced(forced, new_edges):
        if edge_tree is None or not new_edges:
            return forced
        out = dict(forced)
        for e in new_edges:
            t = edge_tree[e]
            out[t] = out.get(t, ()) + (e,)
        return out

    def rec(a, x, forced):
        cand = set()
        for u in a:
            cand |= nbr[u]
        cand -= a
        cand -= x
        if not cand:
            if len(a) < len(vertices):
                yield a
            return
        v = min(cand, key=order_key)
        # v joins A: edges from v into X become cut edges
        new = [frozenset((v, w)) for w in nbr[v] if w in x]
        if legal_after(forced, new):
            a2 = a | {v}
            if x_in_one_component(a2, x):
                yield from rec(a2, x, add_forced(forced, new))
        # v joins the far side: edges from v into A become cut edges
        new = [frozenset((v, w)) for w in nbr[v] if w in a]
        if legal_after(forced, new):
            x2 = x | {v}
            if x_in_one_component(a, x2):
                yield from rec(a, x2, add_forced(forced, new))

    yield from rec(frozenset([root]), frozenset(), {})


def _boundary(g: Graph, a: frozenset) -> frozenset:
    return frozenset(frozenset((u, w)) for u in a for w in g.neighbors(u) if w not in a)


def _check_cap(d: DisplayGraph, max_vertices):
    n = len(d.graph)
    if max_vertices is not None and n > max_vertices:
        raise CapExceeded("minimal cut enumeration", n, max_vertices)
    if len(components(d.graph)) > 1:
        raise GraphError("display graph is not connected; partition the profile first")


def enumerate_legal_minimal_cuts(d: DisplayGraph, max_vertices: int | None = DEFAULT_MAX_CUT_VERTICES) -> list[frozenset]:
    """All legal minimal cuts, sorted by ``cut_key``."""
    _check_cap(d, max_vertices)
    n = len(d.graph)
    out = []
    for a in _bonds(d.graph, d.edge_tree):
        if len(a) >= 2 and n - len(a) >= 2:
            f = _boundary(d.graph, a)
            if lc1_holds(d, f):
                out.append(f)
    return sorted(out, key=cut_key)


def enumerate_edged_minimal_cuts(d: DisplayGraph, max_vertices: int | None = DEFAULT_MAX_CUT_VERTICES) -> list[frozenset]:
    """Minimal cuts whose two sides each keep an edge (legal or not).

    These are exactly the minimal separators of the ELIG.
    """
    _check_cap(d, max_vertices)
    n = len(d.graph)
    out = [_boundary(d.graph, a) for a in _bonds(d.graph) if len(a) >= 2 and n - len(a) >= 2]
    return sorted(out, key=cut_key)


# -- certificates -----------------------------------------------------------


def covers(d: DisplayGraph, f, key) -> bool:
    """``e`` is the only edge of its tree in ``f``."""
    t, e = key
    return e in f and not any(d.edge_tree[o] == t for o in f if o != e)


def coverage_of(d: DisplayGraph, cuts) -> tuple[dict, list]:
    """First covering cut for every internal edge, plus the uncovered ones."""
    coverage = {}
    missing = []
    for key in d.internal_edge_keys():
        for i, f in enumerate(cuts):
            if covers(d, f, key):
                coverage[key] = i
                break
        else:
            missing.append(key)
    return coverage, missing


@dataclass(frozen=True)
class CutCertificate:
    """Pairwise parallel legal minimal cuts that cover every internal edge.

    ``coverage[(tree id, edge)]`` is the index of a cut in which the edge is
    the only one from its tree.
    """

    cuts: tuple
    coverage: dict = field(default_factory=dict)

    compatible = True

    def validate(self, d: DisplayGraph) -> str | None:
        """Re-check every condition; return the first failure, or None."""
        for i, f in enumerate(self.cuts):
            if not f <= d.graph.edges:
                return f"cut {i} uses edges outside the display graph"
            if not is_minimal_cut(d, f):
                return f"cut {i} {_fmt(f)} is not a minimal cut"
            if not is_legal_cut(d, f):
                return f"cut {i} {_fmt(f)} is not legal"
        for (i, f), (j, g) in combinations(enumerate(self.cuts), 2):
            if not are_parallel_cuts(d, f, g):
                return f"cuts {i} and {j} are not parallel"
        for key in d.internal_edge_keys():
            i = self.coverage.get(key)
            if i is None or not (0 <= i < len(self.cuts)) or not covers(d, self.cuts[i], key):
                if any(covers(d, f, key) for f in self.cuts):
                    continue
                return f"internal edge {vertex_name(key[1])} of tree {key[0]} is not covered"
        return None

    def to_json(self) -> dict:
        cuts = [[sorted(vertex_name(v) for v in e) for e in sorted(f, key=order_key)] for f in self.cuts]
        coverage = [
            {"tree": t, "edge": sorted(vertex_name(v) for v in e), "cut": i}
            for (t, e), i in sorted(self.coverage.items(), key=lambda kv: (kv[0][0], order_key(kv[0][1])))
        ]
        return {"cuts": cuts, "coverage": coverage}

    @classmethod
    def from_json(cls, obj: dict, d: DisplayGraph) -> "CutCertificate":
        names = {vertex_name(v): v for v in d.graph.vertices}

        def edge_of(pair):
            try:
                e = frozenset(names[n] for n in pair)
            except KeyError as exc:
                raise ValueError(f"unknown vertex {exc.args[0]!r} in certificate") from None
            if len(e) != 2:
                raise ValueError(f"malformed edge {pair!r}")
            return e

        if not isinstance(obj, dict) or "cuts" not in obj:
            raise ValueError("certificate must be an object with a 'cuts' list")
        cuts = tuple(frozenset(edge_of(p) for p in f) for f in obj["cuts"])
        coverage = {}
        for item in obj.get("coverage", []):
            coverage[(int(item["tree"]), edge_of(item["edge"]))] = int(item["cut"])
        return cls(cuts, coverage)


@dataclass(frozen=True)
class Incompatible:
    """No complete set exists; ``edges`` are internal edges the search could not cover."""

    edges: tuple
    reason: str = ""

    compatible = False


def _certificate(d: DisplayGraph, cuts) -> CutCertificate:
    cuts = tuple(sorted(set(cuts), key=cut_key))
    coverage, missing = coverage_of(d, cuts)
    if missing:
        raise InternalError("certificate lost coverage", missing)
    return CutCertificate(cuts, coverage)


class _Parallel:
    """Memoized parallelism between enumerated cuts."""

    def __init__(self, d: DisplayGraph, cuts):
        self.d = d
        self.cuts = cuts
        self.index = [None] * len(cuts)
        self.memo = {}

    def side_index(self, i):
        if self.index[i] is None:
            self.index[i] = component_index(delete_edges(self.d.graph, self.cuts[i]))
        return self.index[i]

    def __call__(self, i, j):
        if i == j:
            return True
        k = (i, j) if i < j else (j, i)
        if k not in self.memo:
            fi, fj = self.cuts[i], self.cuts[j]
            forward = _meets_at_most_one(self.side_index(i), fi, fj)
            backward = _meets_at_most_one(self.side_index(j), fj, fi)
            if forward != backward:
                log.info("one-way parallelism differs by direction for %s / %s", _fmt(fi), _fmt(fj))
            self.memo[k] = forward and backward
        return self.memo[k]


def find_complete_parallel_set(
    d: DisplayGraph,
    max_vertices: int | None = DEFAULT_MAX_CUT_VERTICES,
    budget: int = DEFAULT_SEARCH_BUDGET,
    cuts: list | None = None,
) -> CutCertificate | Incompatible:
    """Search for a complete set of pairwise parallel legal minimal cuts.

    Every internal edge gets one covering cut; cuts already chosen are reused
    whenever they cover an edge.  Edges are handled fewest-candidates first,
    and each choice prunes the candidate lists of the remaining edges.
    """
    keys = d.internal_edge_keys()
    if not keys:
        return CutCertificate((), {})
    if cuts is None:
        cuts = enumerate_legal_minimal_cuts(d, max_vertices)
    domains = {k: [i for i, f in enumerate(cuts) if covers(d, f, k)] for k in keys}
    empty = tuple(k for k in keys if not domains[k])
    if empty:
        return Incompatible(empty, "no legal minimal cut isolates these edges within their tree")

    usefulness = [0] * len(cuts)
    for k in keys:
        for i in domains[k]:
            usefulness[i] += 1
    for k in keys:
        domains[k].sort(key=lambda i: (-usefulness[i], i))

    parallel = _Parallel(d, cuts)
    steps = 0
    deepest = (-1, ())

    def search(doms, chosen, assigned):
        nonlocal steps, deepest
        steps += 1
        if steps > budget:
            raise BudgetExceeded("complete cut set search", budget)
        doms = dict(doms)
        assigned = dict(assigned)
        # a chosen cut that covers an edge settles it at no cost
        for k in list(doms):
            hit = next((i for i in doms[k] if i in chosen), None)
            if hit is not None:
                assigned[k] = hit
                del doms[k]
        if not doms:
            return assigned
        k = min(doms, key=lambda k: (len(doms[k]), keys.index(k)))
        rest = {o: ds for o, ds in doms.items() if o != k}
        for i in doms[k]:
            pruned = {}
            wiped = None
            for o, ds in rest.items():
                keep = [j for j in ds if parallel(i, j)]
                if not keep:
                    wiped = o
                    break
                pruned[o] = keep
            if wiped is not None:
                if len(assigned) >= deepest[0]:
                    deepest = (len(assigned), (k, wiped))
                continue
            found = search(pruned, chosen | {i}, {**assigned, k: i})
            if found is not None:
                return found
        return None

    result = search(domains, frozenset(), {})
    if result is None:
        return Incompatible(deepest[1], "no pairwise parallel assignment of covering cuts exists")
    return _certificate(d, (cuts[i] for i in result.values()))


def minimalize_complete_set(d: DisplayGraph, c: CutCertificate) -> CutCertificate:
    """Greedily drop cuts (largest first) while the set stays complete."""
    keep = sorted(set(c.cuts), key=cut_key)
    for f in sorted(keep, key=lambda f: (-len(f), cut_key(f))):
        trial = [g for g in keep if g != f]
        if not coverage_of(d, trial)[1]:
            keep = trial
    return _certificate(d, keep)


# -- separator reading ------------------------------------------------------


def separator_view(f) -> frozenset:
    """The cut read as a vertex set of the ELIG (same object)."""
    return as_cut(f)


def cut_view(s) -> frozenset:
    return as_cut(s)


def is_minimal_separator(g: Graph, u) -> bool:
    """At least two components of G - U are full (see every vertex of U)."""
    u = frozenset(u)
    rest = delete_vertices(g, u)
    full = 0
    for comp in components(rest):
        if all(g.neighbors(x) & comp for x in u):
            full += 1
            if full >= 2:
                return True
    return False


def enumerate_minimal_separators(
    g: Graph, max_size: int | None = None, budget: int = DEFAULT_SUBSET_BUDGET
) -> list[frozenset]:
    """Brute force over vertex subsets (up to ``max_size`` elements)."""
    vertices = sorted_vertices(g.vertices)
    top = len(vertices) if max_size is None else min(max_size, len(vertices))
    out = []
    checked = 0
    for size in range(top + 1):
        for combo in combinations(vertices, size):
            checked += 1
            if checked > budget:
                raise BudgetExceeded("minimal separator enumeration", budget)
            if is_minimal_separator(g, combo):
                out.append(frozenset(combo))
    return sorted(out, key=order_key)


def separator_parallel_one_way(g: Graph, u1, u2) -> bool:
    """G - U1 has at most one component meeting U2."""
    u1, u2 = frozenset(u1), frozenset(u2)
    index = component_index(delete_vertices(g, u1))
    return len({index[x] for x in u2 - u1}) <= 1


def are_parallel_separators(g: Graph, u1, u2) -> bool:
    return separator_parallel_one_way(g, u1, u2) and separator_parallel_one_way(g, u2, u1)


def maximal_parallel_extension(
    e: Elig, seps, max_vertices: int | None = DEFAULT_MAX_CUT_VERTICES
) -> list[frozenset]:
    """Greedily add ELIG minimal separators while pairwise parallelism holds.

    Candidates come from ``enumerate_edged_minimal_cuts`` on the display
    graph.  When ``seps`` is a complete set, every added separator must be
    legal; a violation raises ``InternalError``.
    """
    chosen = [separator_view(s) for s in sorted(set(map(as_cut, seps)), key=cut_key)]
    must_be_legal = not coverage_of(e.display, chosen)[1]
    for s in enumerate_edged_minimal_cuts(e.display, max_vertices):
        if s in chosen:
            continue
        if all(are_parallel_separators(e.graph, s, t) for t in chosen):
            if must_be_legal and not is_legal_separator(e, s):
                raise InternalError(f"added separator {_fmt(s)} is not legal", s)
            chosen.append(s)
    return sorted(chosen, key=cut_key)

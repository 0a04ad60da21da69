"""Legal triangulation of the display graph built from a minimal complete cut set.

Each cut F (taken in a fixed order) yields a pair of vertex sets D_F = (X, Y)
drawn from the endpoints of F, plus the interpolating family O_F.  Making all
of these, and every leaf neighbourhood, into cliques gives the triangulation.
The result is always re-verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cuts import (
    are_parallel_cuts,
    as_cut,
    coverage_of,
    cut_key,
    is_legal_cut,
    is_minimal_cut,
    sides,
)
from .display import DisplayGraph
from .errors import InternalError
from .graph_core import (
    FillEdgeSet,
    Graph,
    component_index,
    delete_edges,
    induced_subgraph,
    is_chordal,
    maximal_cliques,
    order_key,
    saturate,
    sorted_vertices,
    to_dot,
    vertex_name,
)


@dataclass(frozen=True)
class DfPair:
    """The pair (X, Y) for one cut.

    ``pairs`` lists the internal edges (x_i, y_i) split by this pair, in
    tree/edge order; ``shared`` is X & Y.  ``side_x``/``side_y`` are the
    vertex sets of the components of G - F holding X - Y and Y - X.
    """

    x: frozenset
    y: frozenset
    cut: frozenset
    pairs: tuple = ()
    side_x: frozenset = frozenset()
    side_y: frozenset = frozenset()

    @property
    def shared(self) -> frozenset:
        return self.x & self.y

    @property
    def union(self) -> frozenset:
        return self.x | self.y

    def differentiates(self, e) -> bool:
        a, b = tuple(e)
        only_x, only_y = self.x - self.y, self.y - self.x
        return (a in only_x and b in only_y) or (b in only_x and a in only_y)


def processing_order(cuts) -> tuple:
    return tuple(sorted(set(map(as_cut, cuts)), key=cut_key))


def check_minimal_complete(d: DisplayGraph, cuts) -> None:
    cuts = list(cuts)
    for f in cuts:
        if not (is_minimal_cut(d, f) and is_legal_cut(d, f)):
            raise ValueError(f"{_fmt(f)} is not a legal minimal cut")
    for f, g in combinations(cuts, 2):
        if not are_parallel_cuts(d, f, g):
            raise ValueError(f"cuts {_fmt(f)} and {_fmt(g)} are not parallel")
    if coverage_of(d, cuts)[1]:
        raise ValueError("cut set is not complete")
    for f in cuts:
        if not coverage_of(d, [g for g in cuts if g != f])[1]:
            raise ValueError(f"cut set is not minimal: {_fmt(f)} is redundant")


def _fmt(f) -> str:
    return "{" + ", ".join(vertex_name(e) for e in sorted(f, key=order_key)) + "}"


def construct_df_pairs(d: DisplayGraph, cuts, order=None) -> dict:
    """Build D_F for every cut, processing cuts in ``order``."""
    order = processing_order(cuts) if order is None else tuple(map(as_cut, order))
    if set(order) != set(map(as_cut, cuts)):
        raise ValueError("order must list exactly the given cuts")
    done: dict = {}
    for f in order:
        by_tree = d.by_tree(f)
        parts = sides(d, f)
        if len(parts) != 2:
            raise ValueError(f"{_fmt(f)} is not a minimal cut")
        least = min(d.leaf_vertices, key=order_key)
        side_x, side_y = parts if least in parts[0] else parts[::-1]
        x, y = set(), set()
        pairs = []
        shared = set()
        for t in sorted(by_tree):
            es = by_tree[t]
            if len(es) == 1:
                (e,) = es
                if d.is_internal_edge(e):
                    a, b = tuple(e)
                    if a in side_y:
                        a, b = b, a
                    pairs.append((t, e, a, b))
                else:
                    # non-internal sole edge contributes its internal end to both sides
                    shared.update(v for v in e if v in d.internal_vertices)
            else:
                (common,) = frozenset.intersection(*es)
                shared.add(common)
        kept = []
        for t, e, a, b in pairs:
            earlier = [i for i in done if done[i].differentiates(e)]
            if len(earlier) > 1:
                raise InternalError(f"edge {vertex_name(e)} has several differentiating cuts", earlier)
            if earlier:
                (i,) = earlier
                index = component_index(delete_edges(d.graph, i))
                touched = {index[next(iter(g))] for g in f - i}
                if len(touched) != 1:
                    raise InternalError(f"cut {_fmt(f)} meets several components of G - {_fmt(i)}", i)
                (q,) = touched
                (v,) = [u for u in e if index[u] == q]
                shared.add(v)
            else:
                kept.append((t, e, a, b))
        x = {a for _, _, a, _ in kept} | shared
        y = {b for _, _, _, b in kept} | shared
        done[f] = DfPair(
            frozenset(x),
            frozenset(y),
            f,
            tuple((a, b) for _, _, a, b in kept),
            side_x,
            side_y,
        )
    return done


def of_families(p: DfPair) -> list[frozenset]:
    """Sets {x_1..x_j, y_j..y_m, z_1..z_p} for j = 1..m."""
    m = len(p.pairs)
    if m == 0:
        raise InternalError(f"cut {_fmt(p.cut)} differentiates no internal edge", p)
    xs = [a for a, _ in p.pairs]
    ys = [b for _, b in p.pairs]
    zs = p.shared
    return [frozenset(xs[: j + 1]) | frozenset(ys[j:]) | zs for j in range(m)]


def differentiating_cut(pairs: dict, e):
    e = frozenset(e)
    hits = [f for f, p in pairs.items() if p.differentiates(e)]
    if len(hits) > 1:
        raise InternalError(f"edge {vertex_name(e)} has several differentiating cuts", hits)
    return hits[0] if hits else None


@dataclass(frozen=True)
class Verification:
    ok: bool
    problems: tuple = ()
    cycle: tuple = ()
    clique: frozenset = frozenset()
    edge: frozenset = frozenset()

    def __bool__(self):
        return self.ok


def _illegal_clique(d: DisplayGraph, clique) -> bool:
    inside = [frozenset(p) for p in combinations(clique, 2) if d.graph.has_edge(*p)]
    return len(inside) >= 2 and any(d.is_internal_edge(e) for e in inside)


def verify_legal_triangulation(d: DisplayGraph, h: FillEdgeSet) -> Verification:
    """Chordality, LT2 on fill edges, LT1 on maximal cliques."""
    if h.base != d.graph:
        return Verification(False, ("fill set is not based on the display graph",))
    g = h.graph
    problems = []
    cycle = ()
    clique = frozenset()
    bad_edge = frozenset()
    result = is_chordal(g)
    if not result:
        cycle = result.cycle
        problems.append("not chordal; chordless cycle " + " - ".join(vertex_name(v) for v in cycle))
    for e in sorted(h.fill, key=order_key):
        if e & d.leaf_vertices:
            bad_edge = e
            problems.append(f"fill edge {vertex_name(e)} touches a leaf")
            break
    for c in maximal_cliques(g):
        if _illegal_clique(d, c):
            clique = c
            problems.append(f"clique {vertex_name(c)} holds an internal edge and another display edge")
            break
    return Verification(not problems, tuple(problems), cycle, clique, bad_edge)


@dataclass(frozen=True)
class LegalTriangulation:
    fill: FillEdgeSet
    df_pairs: dict = field(default_factory=dict)
    of_families: dict = field(default_factory=dict)
    order: tuple = ()

    @property
    def graph(self) -> Graph:
        return self.fill.graph

    def fill_json(self) -> dict:
        edges = sorted((sorted_vertices(e) for e in self.fill.fill), key=lambda p: [order_key(v) for v in p])
        return {"fill": [[vertex_name(v) for v in e] for e in edges]}

    def to_dot(self, d: DisplayGraph, name="triangulation") -> str:
        def vattrs(v):
            return {"shape": "box"} if v in d.leaf_vertices else {"shape": "circle"}

        def eattrs(e):
            return {"style": "dashed"} if e in self.fill.fill else {}

        return to_dot(self.graph, name, vattrs, eattrs)


def lemma_violations(d: DisplayGraph, tri: LegalTriangulation) -> list[str]:
    """Structural properties every constructed triangulation must have."""
    g = tri.graph
    out = []
    for f, p in tri.df_pairs.items():
        z = p.shared
        a_free, b_free = p.side_x - z, p.side_y - z
        for u, v in [(u, v) for u in a_free for v in g.neighbors(u) if v in p.side_y - p.y]:
            out.append(f"forbidden edge {vertex_name(frozenset((u, v)))} across {_fmt(f)}")
        for u, v in [(u, v) for u in b_free for v in g.neighbors(u) if v in p.side_x - p.x]:
            out.append(f"forbidden edge {vertex_name(frozenset((u, v)))} across {_fmt(f)}")
        sub = induced_subgraph(g, p.union)
        if not is_chordal(sub):
            out.append(f"G' restricted to the endpoints of {_fmt(f)} is not chordal")
        for c in maximal_cliques(sub):
            if _illegal_clique(d, c):
                out.append(f"illegal clique {vertex_name(c)} among the endpoints of {_fmt(f)}")
        if p.union & d.leaf_vertices:
            out.append(f"D-pair of {_fmt(f)} contains a leaf")
    for e in tri.fill.fill:
        if e & d.leaf_vertices:
            out.append(f"fill edge {vertex_name(e)} touches a leaf")
    return out


def build_legal_triangulation(d: DisplayGraph, cuts, order=None, validate=True) -> LegalTriangulation:
    """Assemble G' from a minimal complete set and verify it.

    Raises ``InternalError`` (carrying the witness) if the result is not a
    legal triangulation or a structural property fails.
    """
    cuts = processing_order(cuts)
    if validate:
        check_minimal_complete(d, cuts)
    pairs = construct_df_pairs(d, cuts, order)
    families = {f: of_families(p) for f, p in pairs.items()}
    cliques = []
    for f in pairs:
        cliques.append(pairs[f].x)
        cliques.append(pairs[f].y)
        cliques.extend(families[f])
    for leaf in sorted_vertices(d.leaf_vertices):
        cliques.append(d.graph.neighbors(leaf))
    g = saturate(d.graph, cliques)
    fill = FillEdgeSet(d.graph, g.edges - d.graph.edges)
    tri = LegalTriangulation(fill, pairs, families, tuple(pairs))
    check = verify_legal_triangulation(d, fill)
    if not check:
        raise InternalError("constructed graph is not a legal triangulation: " + "; ".join(check.problems), check)
    for f in pairs:
        if not any(pairs[f].differentiates(e) for e in d.internal_edges):
            raise InternalError(f"cut {_fmt(f)} differentiates no internal edge", f)
    problems = lemma_violations(d, tri)
    if problems:
        raise InternalError("; ".join(problems), problems)
    return tri

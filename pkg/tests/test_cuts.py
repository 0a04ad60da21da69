import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from treecompat.cuts import (
    CutCertificate,
    Incompatible,
    are_parallel_cuts,
    are_parallel_separators,
    coverage_of,
    cut_view,
    enumerate_edged_minimal_cuts,
    enumerate_legal_minimal_cuts,
    enumerate_minimal_separators,
    find_complete_parallel_set,
    is_legal_cut,
    is_legal_minimal_cut,
    is_minimal_cut,
    is_minimal_separator,
    lc1_holds,
    maximal_parallel_extension,
    minimalize_complete_set,
    parallel_one_way,
    separator_view,
    sides,
)
from treecompat.display import build_display_graph
from treecompat.elig import build_elig, is_legal_separator, is_restricted_triangulation
from treecompat.errors import BudgetExceeded, CapExceeded, GraphError, InternalError
from treecompat.generate import random_profile
from treecompat.graph_core import FillEdgeSet, Graph, components, delete_edges, is_chordal, saturate
from treecompat.oracle import brute_force_compatible, brute_force_minimal_cuts, brute_force_minimal_separators
from treecompat.phylo_io import parse_profile

from support import E, EXAMPLE_CUTS, F1, F2, F3, F4, cut, d_star, tree


def small_display(seed, n=5, k=2):
    p = random_profile(random.Random(seed), n, k)
    trees = [t for t in p.trees if len(t.labels) >= 3]
    if not trees:
        return None
    d = build_display_graph(trees)
    if len(components(d.graph)) != 1:
        return None
    return d


def test_example_cuts_are_legal_minimal():
    d = d_star()
    for f in EXAMPLE_CUTS:
        assert is_minimal_cut(d, f)
        assert is_legal_cut(d, f)
        assert len(sides(d, f)) == 2


def test_minimality_examples():
    d = d_star()
    assert not is_minimal_cut(d, F1 | {E(2, 3)})
    t = build_display_graph([tree("(a,b,(c,d));")])
    (u,) = [v for v in t.internal_vertices if t.graph.neighbors(v) >= {"a", "b"}]
    star = frozenset(frozenset((u, w)) for w in t.graph.neighbors(u))
    # every tree edge is a bridge, so isolating u leaves four components
    assert len(components(delete_edges(t.graph, star))) == 4
    assert not is_minimal_cut(t, star)
    assert not is_legal_cut(t, star)
    assert all(is_minimal_cut(t, {e}) for e in t.graph.edges)


def test_legality_examples():
    d = d_star()
    assert is_legal_cut(d, F3)
    at_one = cut((1, "a"), (1, "b"), (1, "c"))
    assert not is_legal_cut(d, at_one)
    assert not is_legal_cut(d, cut((1, 2), (3, "d"), (5, 6)))
    assert not lc1_holds(d, cut((1, 2), (3, "d"), (5, 6)))
    with pytest.raises(GraphError):
        is_minimal_cut(d, {frozenset(("a", "z"))})


def test_parallel_examples():
    d = d_star()
    for f, g in combinations(EXAMPLE_CUTS, 2):
        assert are_parallel_cuts(d, f, g)
    assert not are_parallel_cuts(d, F1, cut((2, 3), (4, 5)))
    assert are_parallel_cuts(d, F1, F1)


def test_enumeration_on_figure():
    d = d_star()
    found = enumerate_legal_minimal_cuts(d, max_vertices=None)
    assert set(EXAMPLE_CUTS) <= set(found)
    assert len(found) == 30
    assert all(is_legal_minimal_cut(d, f) for f in found)
    with pytest.raises(CapExceeded):
        enumerate_legal_minimal_cuts(d, max_vertices=10)


def test_enumeration_small_cases():
    t = build_display_graph([tree("(a,b,(c,d));")])
    (internal,) = t.internal_edges
    assert frozenset({internal}) in enumerate_legal_minimal_cuts(t)
    assert enumerate_legal_minimal_cuts(build_display_graph([tree("(a,b);")])) == []
    with pytest.raises(GraphError):
        enumerate_legal_minimal_cuts(build_display_graph(parse_profile("(a,b,c);(x,y,z);")))


def test_certificate_for_figure():
    d = d_star()
    cert = find_complete_parallel_set(d, max_vertices=None)
    assert cert.compatible and cert.validate(d) is None
    assert len(cert.cuts) >= 4
    assert len(cert.coverage) == 5
    given_cert = CutCertificate(EXAMPLE_CUTS, coverage_of(d, EXAMPLE_CUTS)[0])
    assert given_cert.validate(d) is None
    assert CutCertificate.from_json(given_cert.to_json(), d) == given_cert


def test_dropping_f3_leaves_edge_uncovered():
    d = d_star()
    missing = coverage_of(d, [F1, F2, F4])[1]
    assert missing == [(1, E(4, 5))]
    message = CutCertificate((F1, F2, F4)).validate(d)
    assert "not covered" in message and "1:1" in message and "1:2" in message


def test_incompatible_quartets():
    d = build_display_graph(parse_profile("((a,b),(c,d));((a,c),(b,d));"))
    result = find_complete_parallel_set(d)
    assert isinstance(result, Incompatible) and not result.compatible


def test_single_tree_certificate():
    t = tree("((a,b),(c,d),(e,f));")
    d = build_display_graph([t])
    cert = find_complete_parallel_set(d)
    assert cert.validate(d) is None
    assert sorted(map(len, cert.cuts)) == [1, 1, 1]


def test_search_budget():
    d = d_star()
    with pytest.raises(BudgetExceeded):
        find_complete_parallel_set(d, max_vertices=None, budget=1)


def test_minimalize_examples():
    d = d_star()
    cert = CutCertificate(EXAMPLE_CUTS, coverage_of(d, EXAMPLE_CUTS)[0])
    assert set(minimalize_complete_set(d, cert).cuts) == set(EXAMPLE_CUTS)
    doubled = CutCertificate(EXAMPLE_CUTS + (F1,), {})
    assert set(minimalize_complete_set(d, doubled).cuts) == set(EXAMPLE_CUTS)
    assert len(minimalize_complete_set(d, doubled).cuts) == 4
    extra = [f for f in enumerate_legal_minimal_cuts(d, None)
             if f not in EXAMPLE_CUTS and all(are_parallel_cuts(d, f, g) for g in EXAMPLE_CUTS)]
    assert extra
    padded = CutCertificate(EXAMPLE_CUTS + (extra[0],), {})
    assert padded.validate(d) is None
    assert set(minimalize_complete_set(d, padded).cuts) == set(EXAMPLE_CUTS)


def test_separator_view_examples():
    d = d_star()
    e = build_elig(d)
    s = separator_view(F1)
    assert s == {E(1, 2), E(5, 6)}
    assert len(components(Graph(e.graph.vertices - s, (x for x in e.graph.edges if not x & s)))) == 2
    assert separator_view(set()) == frozenset()
    assert cut_view(separator_view(F3)) == F3
    assert is_minimal_separator(e.graph, s)


def test_minimal_separator_examples():
    path = Graph.from_edges([("a", "u"), ("u", "b")])
    assert is_minimal_separator(path, {"u"})
    k4 = Graph.from_edges(combinations(range(4), 2))
    assert not any(is_minimal_separator(k4, s) for r in range(5) for s in combinations(range(4), r))
    assert enumerate_minimal_separators(path) == [frozenset({"u"})]


def test_maximal_parallel_extension_figure():
    d = d_star()
    e = build_elig(d)
    ext = maximal_parallel_extension(e, EXAMPLE_CUTS, max_vertices=None)
    assert set(EXAMPLE_CUTS) <= set(ext)
    assert all(is_legal_separator(e, s) for s in ext)
    assert is_chordal(saturate(e.graph, ext))
    sat = saturate(e.graph, ext)
    assert is_restricted_triangulation(e, FillEdgeSet(e.graph, sat.edges - e.graph.edges))
    assert maximal_parallel_extension(e, ext, max_vertices=None) == ext


def test_complete_set_found_on_figure():
    d = d_star()
    e = build_elig(d)
    cert = find_complete_parallel_set(d, max_vertices=None)
    for s in map(separator_view, cert.cuts):
        assert is_minimal_separator(e.graph, s) and is_legal_separator(e, s)
    for a, b in combinations(cert.cuts, 2):
        assert are_parallel_separators(e.graph, separator_view(a), separator_view(b))


@pytest.mark.parametrize("seed", range(40))
def test_enumerators_match_brute_force(seed):
    d = small_display(seed, n=4 + seed % 2, k=2)
    if d is None or len(d.graph.vertices) > 14:
        return
    minimal = brute_force_minimal_cuts(d.graph)
    assert all(len(components(delete_edges(d.graph, f))) == 2 for f in minimal)
    legal = [f for f in minimal if is_legal_cut(d, f)]
    assert enumerate_legal_minimal_cuts(d) == legal
    edged = [f for f in minimal if all(any(len(c) > 1 for c in [s]) for s in sides(d, f))]
    assert enumerate_edged_minimal_cuts(d) == edged
    e = build_elig(d)
    if len(e.graph.vertices) <= 14:
        assert enumerate_edged_minimal_cuts(d) == brute_force_minimal_separators(e.graph)
        assert enumerate_minimal_separators(e.graph) == brute_force_minimal_separators(e.graph)


@pytest.mark.parametrize("seed", range(40))
def test_lc1_is_the_clique_condition(seed):
    d = small_display(seed)
    if d is None:
        return
    e = build_elig(d)
    rng = random.Random(seed)
    edges = sorted(d.graph.edges, key=repr)
    for _ in range(50):
        f = frozenset(rng.sample(edges, rng.randint(1, min(5, len(edges)))))
        assert lc1_holds(d, f) == is_legal_separator(e, f)


@pytest.mark.parametrize("seed", range(30))
def test_solver_agrees_with_oracle(seed):
    p = random_profile(random.Random(seed), 6, 2 + seed % 2, min_leaves=4)
    d = build_display_graph(p)
    if len(components(d.graph)) != 1:
        return
    found = find_complete_parallel_set(d, max_vertices=None)
    assert found.compatible == (brute_force_compatible(p) is not None)
    if found.compatible:
        assert found.validate(d) is None
        small = minimalize_complete_set(d, found)
        assert small.validate(d) is None
        for f in small.cuts:
            assert coverage_of(d, [g for g in small.cuts if g != f])[1]


@pytest.mark.parametrize("seed", range(20))
def test_extension_of_complete_sets_is_legal(seed):
    p = random_profile(random.Random(seed), 5, 2, compatible=True, min_leaves=4)
    d = build_display_graph(p)
    if len(components(d.graph)) != 1:
        return
    cert = find_complete_parallel_set(d, max_vertices=None)
    e = build_elig(d)
    ext = maximal_parallel_extension(e, cert.cuts, max_vertices=None)
    assert all(is_legal_separator(e, s) for s in ext)
    sat = saturate(e.graph, ext)
    assert is_restricted_triangulation(e, FillEdgeSet(e.graph, sat.edges - e.graph.edges))


def test_parallel_is_both_directions():
    d = d_star()
    found = enumerate_legal_minimal_cuts(d, None)
    for f, g in combinations(found, 2):
        assert are_parallel_cuts(d, f, g) == (parallel_one_way(d, f, g) and parallel_one_way(d, g, f))

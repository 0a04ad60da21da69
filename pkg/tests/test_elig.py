import random
from collections import deque

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from treecompat.display import build_display_graph
from treecompat.elig import build_elig, is_legal_separator, is_restricted_triangulation, k_hat
from treecompat.errors import GraphError
from treecompat.generate import random_profile
from treecompat.graph_core import FillEdgeSet, Graph, is_clique
from treecompat.phylo_io import parse_profile

from support import E, F2, d_star, to_nx, tree, vx
from test_display import hand_g_star


def test_figure_elig():
    e = build_elig(d_star())
    assert len(e.graph.vertices) == 18
    assert nx.is_isomorphic(to_nx(e.graph), nx.line_graph(hand_g_star()))
    assert e.graph.neighbors(E(1, 2)) == {E(1, "a"), E(1, "b"), E(1, "c"), E(2, 3), E(2, "f")}
    for v, t in e.vertex_tree.items():
        assert e.display.edge_tree[v] == t


def test_small_eligs():
    e = build_elig(build_display_graph([tree("(a,b);")]))
    assert len(e.graph.vertices) == 1 and not e.graph.edges
    e = build_elig(build_display_graph([tree("(a,b,c);")]))
    assert nx.is_isomorphic(to_nx(e.graph), nx.complete_graph(3))


def test_k_hat_examples():
    e = build_elig(d_star())
    assert k_hat(e, vx(2)) == {E(1, 2), E(2, 3), E(2, "f")}
    assert k_hat(e, "g") == {E(7, "g")}
    with pytest.raises(GraphError):
        k_hat(e, "zz")
    for u in e.display.graph.vertices:
        assert is_clique(e.graph, k_hat(e, u))


def test_legal_separator_examples():
    e = build_elig(d_star())
    assert is_legal_separator(e, F2)
    assert not is_legal_separator(e, {E(1, 2), E(3, "d")})
    assert is_legal_separator(e, set())


def test_restricted_triangulation_examples():
    e = build_elig(build_display_graph([tree("(a,b,c);")]))
    assert is_restricted_triangulation(e, FillEdgeSet(e.graph, frozenset()))
    es = build_elig(d_star())
    bad = FillEdgeSet(es.graph, frozenset({frozenset((E(1, 2), E(3, "d")))}))
    assert not is_restricted_triangulation(es, bad)


def _bfs(g, start, goal, allowed):
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            return True
        for w in g.neighbors(x):
            if w not in seen and allowed(x, w):
                seen.add(w)
                queue.append(w)
    return False


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_path_transfer(seed, pick):
    """A vertex path avoiding I exists iff an ELIG path between incident edges avoids I."""
    p = random_profile(random.Random(seed), 6, 2)
    if any(len(t.labels) <= 2 for t in p.trees):
        return
    d = build_display_graph(p)
    e = build_elig(d)
    rng = random.Random(pick)
    edges = sorted(d.graph.edges, key=repr)
    removed = frozenset(rng.sample(edges, rng.randint(0, min(4, len(edges)))))
    kept = [x for x in edges if x not in removed]
    if len(kept) < 2:
        return
    f, g = rng.sample(kept, 2)
    in_l = _bfs(e.graph, f, g, lambda a, b: b not in removed)
    rest = Graph(d.graph.vertices, d.graph.edges - removed)
    in_g = any(_bfs(rest, u, v, lambda a, b: True) for u in f for v in g)
    assert in_l == in_g

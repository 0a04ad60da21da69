"""Shared fixtures data and independent reference checks for the tests."""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from treecompat.display import build_display_graph
from treecompat.graph_core import Graph
from treecompat.phylo_io import parse_newick, parse_profile

T1_NEWICK = "((a,b,c),f,(d,e));"
T2_NEWICK = "(a,b,(c,(d,e,(f,g))));"
P_STAR_TEXT = T1_NEWICK + "\n" + T2_NEWICK + "\n"

# figure numbering of internal vertices -> display vertices
V = {1: (0, 1), 2: (0, 2), 3: (0, 3), 4: (1, 1), 5: (1, 2), 6: (1, 3), 7: (1, 4)}


def vx(x):
    return V[x] if isinstance(x, int) else x


def E(u, v):
    return frozenset((vx(u), vx(v)))


def cut(*pairs):
    return frozenset(E(u, v) for u, v in pairs)


F1 = cut((1, 2), (5, 6))
F2 = cut((2, 3), (6, 7), (5, 6))
F3 = cut((4, 5), (1, 2), (1, "c"))
F4 = cut((6, 7), (2, "f"))
EXAMPLE_CUTS = (F1, F2, F3, F4)
EXAMPLE_SPLITS = ("a b c | d e f g", "a b c f g | d e", "a b | c d e f g", "a b c d e | f g")


def p_star():
    return parse_profile(P_STAR_TEXT)


def d_star():
    return build_display_graph(p_star())


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(tuple(e) for e in g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    return Graph(h.nodes, (frozenset(e) for e in h.edges))


def is_chordal_brute(g: Graph) -> bool:
    """No induced cycle of length >= 4 (subset search, tiny graphs only)."""
    h = to_nx(g)
    nodes = list(h.nodes)
    for k in range(4, len(nodes) + 1):
        for sub in combinations(nodes, k):
            s = h.subgraph(sub)
            if s.number_of_edges() == k and all(d == 2 for _, d in s.degree()) and nx.is_connected(s):
                return False
    return True


def brute_displays(s, t) -> bool:
    """Contract subsets of S|L(T)'s internal edges and compare with T."""
    from treecompat.phylo_io import normalize, serialize_newick
    from treecompat.splits import restrict

    r = restrict(s, t.labels)
    target = serialize_newick(t)
    internal = sorted(r.internal_edges, key=sorted)
    for k in range(len(internal) + 1):
        for chosen in combinations(internal, k):
            parent = {v: v for v in r.vertices}

            def find(v):
                while parent[v] != v:
                    v = parent[v]
                return v

            for e in chosen:
                a, b = (find(x) for x in e)
                parent[max(a, b)] = min(a, b)
            adj = {}
            for e in r.graph.edges:
                a, b = (find(x) for x in e)
                if a != b:
                    adj.setdefault(a, set()).add(b)
                    adj.setdefault(b, set()).add(a)
            if serialize_newick(normalize(adj)) == target:
                return True
    return False


def tree(text):
    return parse_newick(text)

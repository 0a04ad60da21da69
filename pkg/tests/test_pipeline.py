import random

import pytest

from treecompat.generate import random_profile
from treecompat.oracle import OracleBudget, brute_force_compatible
from treecompat.phylo_io import parse_newick, parse_profile, serialize_newick
from treecompat.pipeline import display_blocks, join_trees, solve
from treecompat.splits import displays

from support import P_STAR_TEXT


def test_figure_profile():
    sol = solve(parse_profile(P_STAR_TEXT))
    assert sol.compatible
    assert serialize_newick(sol.supertree) == "(a,b,(c,((d,e),(f,g))));"
    assert len(sol.certificate_json()["cuts"]) == 4
    assert len(sol.certificate_json()["coverage"]) == 5
    assert set(sol.timings) == {"certificate", "supertree", "triangulation"}


def test_trivial_trees_and_disjoint_blocks():
    p = parse_profile(P_STAR_TEXT + "(x,y);((p,q),r,(s,t));z;(a,x);")
    assert [sorted(d.tree_ids) for d in display_blocks(p)] == [[0, 1], [3]]
    sol = solve(p)
    assert sol.compatible
    assert sol.supertree.labels == p.labels
    assert all(displays(sol.supertree, t) for t in p)
    assert len(sol.blocks) == 2


def test_incompatible_block_stops():
    sol = solve(parse_profile("((a,b),(c,d));((a,c),(b,d));(x,y,z);"))
    assert not sol.compatible and sol.supertree is None
    assert sol.blocks[-1].incompatible is not None


def test_join_trees_small_cases():
    assert serialize_newick(join_trees([], "ab")) == "(a,b);"
    assert serialize_newick(join_trees([parse_newick("(a,b,c);")])) == "(a,b,c);"
    assert serialize_newick(join_trees([parse_newick("(a,b,c);")], "d")) == "(a,(b,c),d);"
    two = join_trees([parse_newick("(a,b,(c,d));"), parse_newick("(x,y,z);")])
    assert displays(two, parse_newick("(a,b,(c,d));")) and displays(two, parse_newick("(x,y,z);"))


@pytest.mark.parametrize("seed", range(40))
def test_solve_matches_oracle(seed):
    p = random_profile(random.Random(seed), 7, 1 + seed % 3, min_leaves=2)
    sol = solve(p, max_vertices=None)
    assert sol.compatible == (brute_force_compatible(p, OracleBudget(max_labels=7)) is not None)
    if sol.compatible:
        assert all(displays(sol.supertree, t) for t in p)
        assert sol.supertree.labels == p.labels

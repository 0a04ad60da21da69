"""End-to-end solve: partition, certify each block, build supertree and G'.

Trees with at most two leaves have no internal edge and impose no
constraint; they are kept out of display graphs and their labels are just
attached to the final supertree.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cuts import (
    DEFAULT_MAX_CUT_VERTICES,
    DEFAULT_SEARCH_BUDGET,
    CutCertificate,
    Incompatible,
    find_complete_parallel_set,
    minimalize_complete_set,
)
from .display import DisplayGraph, build_display_graph, partition_indices
from .phylo_io import PhyloTree, Profile, normalize
from .splits import supertree_from_certificate
from .triangulate import LegalTriangulation, build_legal_triangulation


@dataclass
class BlockResult:
    display: DisplayGraph
    certificate: CutCertificate | None = None
    minimal: CutCertificate | None = None
    supertree: PhyloTree | None = None
    triangulation: LegalTriangulation | None = None
    incompatible: Incompatible | None = None


@dataclass
class Solution:
    profile: Profile
    blocks: list = field(default_factory=list)
    supertree: PhyloTree | None = None
    timings: dict = field(default_factory=dict)

    @property
    def compatible(self) -> bool:
        return all(b.incompatible is None for b in self.blocks)

    def certificate_json(self) -> dict:
        """All block certificates merged; coverage indices refer to the merged list."""
        cuts, coverage = [], []
        for b in self.blocks:
            obj = b.minimal.to_json()
            for item in obj["coverage"]:
                coverage.append({**item, "cut": item["cut"] + len(cuts)})
            cuts.extend(obj["cuts"])
        return {"cuts": cuts, "coverage": coverage}

    def fill_json(self) -> dict:
        fill = []
        for b in self.blocks:
            fill.extend(b.triangulation.fill_json()["fill"])
        return {"fill": fill}


def nontrivial_indices(p: Profile) -> list[int]:
    return [i for i, t in enumerate(p.trees) if len(t.labels) >= 3]


def display_blocks(p: Profile) -> list[DisplayGraph]:
    """One display graph per connected block, with global tree ids."""
    keep = nontrivial_indices(p)
    trees = [p.trees[i] for i in keep]
    return [
        build_display_graph([trees[j] for j in block], [keep[j] for j in block])
        for block in partition_indices(trees)
    ]


def join_trees(trees, extra_labels=()) -> PhyloTree:
    """A tree displaying each of ``trees`` (pairwise label-disjoint) plus loose labels.

    Every piece hangs off one hub, attached at a subdivided edge; normalizing
    suppresses whatever hub or subdivision turns out to be redundant.
    """
    trees = list(trees)
    hub = ("hub",)
    adj: dict = {hub: set()}

    def link(u, v):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    for k, t in enumerate(trees):
        rename = {v: v if isinstance(v, str) else (k, v) for v in t.vertices}
        edges = sorted((sorted((rename[x] for x in e), key=repr) for e in t.graph.edges), key=repr)
        if not edges:
            (only,) = t.vertices
            link(hub, only)
            continue
        for u, v in edges[1:]:
            link(u, v)
        u, v = edges[0]
        mid = ("mid", k)
        link(u, mid)
        link(mid, v)
        link(hub, mid)
    placed = frozenset().union(*(t.labels for t in trees))
    for x in sorted(set(extra_labels) - placed):
        link(hub, x)
    return normalize(adj)


def solve(
    p: Profile,
    max_vertices: int | None = DEFAULT_MAX_CUT_VERTICES,
    budget: int = DEFAULT_SEARCH_BUDGET,
    triangulate: bool = True,
) -> Solution:
    """Decide compatibility; on success also build supertree and G'.

    Stops at the first incompatible block.
    """
    sol = Solution(p)
    timings = {"certificate": 0.0, "supertree": 0.0, "triangulation": 0.0}
    for d in display_blocks(p):
        block = BlockResult(d)
        sol.blocks.append(block)
        start = time.perf_counter()
        found = find_complete_parallel_set(d, max_vertices=max_vertices, budget=budget)
        timings["certificate"] += time.perf_counter() - start
        if isinstance(found, Incompatible):
            block.incompatible = found
            break
        block.certificate = found
        block.minimal = minimalize_complete_set(d, found)
        start = time.perf_counter()
        block.supertree = supertree_from_certificate(d, block.minimal)
        timings["supertree"] += time.perf_counter() - start
        if triangulate:
            start = time.perf_counter()
            block.triangulation = build_legal_triangulation(d, block.minimal.cuts)
            timings["triangulation"] += time.perf_counter() - start
    if sol.compatible:
        sol.supertree = join_trees([b.supertree for b in sol.blocks], p.labels)
    sol.timings = timings
    return sol

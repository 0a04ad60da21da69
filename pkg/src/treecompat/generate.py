"""Seeded random trees and profiles for property tests and the CLI."""

from __future__ import annotations

import random
import string

from .phylo_io import PhyloTree, Profile, normalize
from .splits import restrict


def label_names(n: int) -> list[str]:
    letters = string.ascii_lowercase
    return [letters[i] if i < len(letters) else f"x{i}" for i in range(n)]


def random_binary_tree(labels, rng: random.Random) -> PhyloTree:
    """Uniform over binary topologies (each leaf goes onto a uniform edge)."""
    labels = list(labels)
    rng.shuffle(labels)
    if len(labels) <= 2:
        return normalize({x: set(labels) - {x} for x in labels})
    if len(labels) == 3:
        adj = {x: {0} for x in labels}
        adj[0] = set(labels)
        return normalize(adj)
    edges = [(labels[0], 1), (labels[1], 1), (labels[2], 1)]
    fresh = 2
    for x in labels[3:]:
        i = rng.randrange(len(edges))
        u, v = edges.pop(i)
        edges += [(u, fresh), (fresh, v), (fresh, x)]
        fresh += 1
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return normalize(adj)


def contract_random(t: PhyloTree, rng: random.Random, p: float) -> PhyloTree:
    """Contract each internal edge independently with probability ``p``."""
    merged = {v: v for v in t.vertices}

    def find(v):
        while merged[v] != v:
            v = merged[v]
        return v

    for e in sorted(t.internal_edges, key=lambda e: sorted(e)):
        if rng.random() < p:
            a, b = sorted(find(v) for v in e)
            merged[b] = a
    adj = {find(v): set() for v in t.vertices}
    for e in t.graph.edges:
        u, v = (find(x) for x in e)
        if u != v:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    return normalize(adj)


def random_tree(labels, rng: random.Random, contract: float = 0.3) -> PhyloTree:
    return contract_random(random_binary_tree(labels, rng), rng, contract)


def random_profile(
    rng: random.Random,
    n_labels: int,
    n_trees: int,
    compatible: bool | None = None,
    min_leaves: int = 3,
    contract: float = 0.3,
) -> Profile:
    """Trees on random label subsets.

    ``compatible=True`` restricts one hidden tree, so the profile is
    compatible by construction; otherwise trees are drawn independently
    (``None`` picks either way at random).
    """
    if compatible is None:
        compatible = rng.random() < 0.5
    labels = label_names(n_labels)
    base = random_binary_tree(labels, rng)
    trees = []
    for _ in range(n_trees):
        k = rng.randint(min(min_leaves, n_labels), n_labels)
        subset = sorted(rng.sample(labels, k))
        t = restrict(base, subset) if compatible else random_binary_tree(subset, rng)
        trees.append(contract_random(t, rng, contract))
    return Profile(tuple(trees))

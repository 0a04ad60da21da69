"""Compatibility of unrooted phylogenetic trees via legal cuts of the display graph."""

from .cuts import CutCertificate, Incompatible, find_complete_parallel_set
from .display import DisplayGraph, build_display_graph
from .phylo_io import PhyloTree, Profile, parse_newick, parse_profile, serialize_newick
from .pipeline import Solution, solve
from .splits import Split, build_tree_from_splits, splits_of_tree

__all__ = [
    "CutCertificate",
    "DisplayGraph",
    "Incompatible",
    "PhyloTree",
    "Profile",
    "Solution",
    "Split",
    "build_display_graph",
    "build_tree_from_splits",
    "find_complete_parallel_set",
    "parse_newick",
    "parse_profile",
    "serialize_newick",
    "solve",
    "splits_of_tree",
]

__version__ = "0.1.0"

"""
Necklace Centres - Sampling Module
Prefix-tree and de Bruijn centre constructions plus their bounds.
"""

from .bounds import BoundsReport, coverage_bounds, max_length_bound, theoretical_bounds
from .debruijn import choose_lambda, debruijn_sample, debruijn_sequence
from .prefix_tree import prefix_tree_sample

__all__ = [
    "BoundsReport",
    "coverage_bounds",
    "max_length_bound",
    "theoretical_bounds",
    "choose_lambda",
    "debruijn_sample",
    "debruijn_sequence",
    "prefix_tree_sample",
]

"""
Necklace Centres - Oracle Module
Brute-force enumeration and exact evaluation of centre sets.
"""

from .enumerate import brute_count_cyclic, brute_necklaces, enumerate_language, language_size
from .evaluate import DistanceMatrix, default_grid, evaluate, optimal_kcentre, ratio_study

__all__ = [
    "brute_count_cyclic",
    "brute_necklaces",
    "enumerate_language",
    "language_size",
    "DistanceMatrix",
    "default_grid",
    "evaluate",
    "optimal_kcentre",
    "ratio_study",
]

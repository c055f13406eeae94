"""
Necklace Centres - Ranking Module
Ranking, unranking and prefix counting of constrained necklaces.
"""

from .fixed_content import (
    EnumerationBackend,
    FixedContentRanker,
    PrefixCounter,
    count_fixed_content_with_prefix,
)
from .forbidden import (
    SIZE_METHODS,
    ForbiddenNecklaceRanker,
    RankContext,
    b_prime,
    count_A,
    omega,
    rank_lyndon,
    rank_necklace,
    size_T,
    size_T_prime,
    theta,
    unrank_necklace,
)
from .rankers import NecklaceRanker, ranker_for

__all__ = [
    "EnumerationBackend",
    "FixedContentRanker",
    "PrefixCounter",
    "count_fixed_content_with_prefix",
    "ForbiddenNecklaceRanker",
    "RankContext",
    "SIZE_METHODS",
    "b_prime",
    "count_A",
    "omega",
    "rank_lyndon",
    "rank_necklace",
    "size_T",
    "size_T_prime",
    "theta",
    "unrank_necklace",
    "NecklaceRanker",
    "ranker_for",
]

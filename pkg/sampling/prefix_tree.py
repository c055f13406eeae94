"""
Necklace Centres - Prefix-Tree Sampler
Centres from a breadth-first walk over canonical necklace prefixes.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from core.errors import EmptyLanguageError, InvalidInputError
from core.models import CentreSet, LanguageSpec, Letters, Word
from ranking.rankers import NecklaceRanker, ranker_for

logger = logging.getLogger(__name__)

METHOD = "prefix-tree"


@dataclass(frozen=True)
class Branch:
    """A viable prefix and the inclusive rank interval of necklaces it covers."""
    prefix: Letters
    lo: int
    hi: int

    @property
    def midpoint(self) -> int:
        return self.lo + (self.hi - self.lo) // 2


def _children(ranker: NecklaceRanker, branch: Branch) -> List[Branch]:
    children = []
    lo = branch.lo
    for sigma in range(1, ranker.q + 1):
        prefix = branch.prefix + (sigma,)
        count = ranker.count_with_prefix(prefix)
        if count > 0:
            children.append(Branch(prefix, lo, lo + count - 1))
            lo += count
    return children


def expand_frontier(ranker: NecklaceRanker, k: int) -> List[Branch]:
    """
    Refine the prefix tree level by level while the frontier fits in k.

    A branch is replaced by its viable children when they fit. The first
    branch whose children do not fit receives as many of its smallest
    children as the budget allows, keeps the rest of its interval, and the
    walk stops there.
    """
    total = ranker.count()
    frontier = [Branch((), 0, total - 1)]
    while True:
        following: List[Branch] = []
        stopped = False
        grew = False
        for index, branch in enumerate(frontier):
            if stopped or len(branch.prefix) == ranker.length:
                following.append(branch)
                continue
            children = _children(ranker, branch)
            slots = k - len(following) - (len(frontier) - index - 1)
            if len(children) <= slots:
                following.extend(children)
                grew = True
                continue
            taken = children[:slots - 1]
            following.extend(taken)
            if taken:
                following.append(Branch(branch.prefix, taken[-1].hi + 1, branch.hi))
            else:
                following.append(branch)
            stopped = True
        frontier = following
        logger.debug(f"Frontier of {len(frontier)} prefixes, shortest {min(len(b.prefix) for b in frontier)}")
        if stopped or not grew:
            return frontier


def _whole_language(language: LanguageSpec, k: int) -> Optional[CentreSet]:
    if language.is_max_length:
        rankers = [ranker_for(language.at_length(n)) for n in language.lengths]
    else:
        rankers = [ranker_for(language)]
    size = sum(r.count() for r in rankers)
    if size == 0:
        raise EmptyLanguageError(f"{language.describe()} has no necklaces")
    if k < size:
        return None
    centres = [Word.of(r.unrank(i), language.q) for r in rankers for i in range(r.count())]
    logger.info(f"k={k} covers all {size} necklaces of {language.describe()}")
    return CentreSet(tuple(centres), METHOD, language.length, language, k)


def prefix_tree_sample(language: LanguageSpec, k: int,
                       ranker: Optional[NecklaceRanker] = None) -> CentreSet:
    """
    Choose up to k centres by refining necklace prefixes.

    Args:
        language: Target language; max-length families are sampled at their top length.
        k: Number of centres.
        ranker: Optional ranker override for the top length.

    Returns:
        CentreSet whose lambda_achieved is the shortest surviving prefix.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    whole = _whole_language(language, k)
    if whole is not None:
        return whole

    ranker = ranker or ranker_for(language)
    if ranker.count() == 0:
        raise EmptyLanguageError(f"{language.describe()} has no necklaces of length {language.length}")
    if k >= ranker.count():
        branches = [Branch(ranker.unrank(i), i, i) for i in range(ranker.count())]
    else:
        branches = expand_frontier(ranker, k)

    centres = tuple(Word.of(ranker.unrank(b.midpoint), language.q) for b in branches)
    lam = min(len(b.prefix) for b in branches)
    logger.info(f"Prefix-tree sampler: {len(centres)} centres for {language.describe()}, lambda={lam}")
    return CentreSet(centres, METHOD, lam, language, k)

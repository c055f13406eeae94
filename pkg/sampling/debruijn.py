"""
Necklace Centres - de Bruijn Sampler
Centres cut from a de Bruijn sequence so that every length-lambda word is covered.
"""

import logging
from math import ceil
from typing import List, Optional, Tuple

from config import get_settings
from core.errors import InvalidInputError, ResourceLimitError
from core.models import CentreSet, Family, LanguageSpec, Letters, Word
from core.words import canonical_letters
from ranking.rankers import ranker_for

logger = logging.getLogger(__name__)

METHOD = "de-bruijn"


def debruijn_sequence(q: int, order: int, budget: Optional[int] = None) -> Word:
    """
    Lexicographically least de Bruijn sequence of the given order over 1..q.

    Concatenates, in lexicographic order, the Lyndon words whose length
    divides the order (iterative FKM generation, linear in q^order).

    Raises:
        ResourceLimitError: If q^order exceeds the sequence budget.
    """
    if order < 1:
        raise InvalidInputError(f"order must be >= 1, got {order}")
    budget = budget if budget is not None else get_settings().debruijn_budget
    size = q ** order
    if size > budget:
        raise ResourceLimitError(f"de Bruijn sequence of length {size} exceeds budget {budget}")

    sequence: List[int] = []
    word = [1]
    while word:
        m = len(word)
        if order % m == 0:
            sequence.extend(word)
        while len(word) < order:
            word.append(word[-m])
        while word and word[-1] == q:
            word.pop()
        if word:
            word[-1] += 1
    return Word.of(sequence, q)


def choose_lambda(q: int, length: int, k: int) -> int:
    """Largest lambda <= length with q^lambda <= k * (length - lambda + 1); 0 if none."""
    lam = 0
    while lam < length and q ** (lam + 1) <= k * (length - lam):
        lam += 1
    return lam


def debruijn_windows(sequence: Letters, length: int, lam: int) -> List[Letters]:
    """
    Length-``length`` windows of the cyclic sequence at stride length - lam + 1.

    Consecutive windows overlap in lam - 1 characters, so every start
    position of a length-lam subword lies in some window.
    """
    size = len(sequence)
    stride = length - lam + 1
    windows = []
    for i in range(ceil(size / stride)):
        start = i * stride
        windows.append(tuple(sequence[(start + m) % size] for m in range(length)))
    return windows


def _fill_from_gaps(language: LanguageSpec, chosen: List[Letters], k: int) -> List[Letters]:
    """Add midpoint necklaces of the widest untouched rank gaps until k centres."""
    ranker = ranker_for(language)
    total = ranker.count()
    taken = sorted({ranker.rank(c) for c in chosen})
    added: List[Letters] = []
    while len(chosen) + len(added) < k and len(taken) < total:
        bounds = [-1] + taken + [total]
        best: Optional[Tuple[int, int]] = None
        for left, right in zip(bounds, bounds[1:]):
            lo, hi = left + 1, right - 1
            if lo <= hi and (best is None or hi - lo > best[1] - best[0]):
                best = (lo, hi)
        if best is None:
            break
        mid = best[0] + (best[1] - best[0]) // 2
        added.append(ranker.unrank(mid))
        taken = sorted(taken + [mid])
    return added


def debruijn_sample(language: LanguageSpec, k: int, fill: bool = True,
                    budget: Optional[int] = None) -> CentreSet:
    """
    Choose up to k centres as windows of a de Bruijn sequence.

    Args:
        language: Fixed-length language (max-length is sampled at its top length).
        k: Number of centres.
        fill: Top up with midpoint necklaces when the windows number fewer than k.
        budget: Override for the sequence-length budget.

    Returns:
        CentreSet certifying lambda: every length-lambda word occurs in some centre.
    """
    if language.family not in (Family.FIXED_LENGTH, Family.MAX_LENGTH):
        raise InvalidInputError(f"de Bruijn sampler needs an unconstrained language, got {language.family.value}")
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    q, length = language.q, language.length
    if length < 2:
        raise InvalidInputError(f"de Bruijn sampler needs length >= 2, got {length}")

    lam = choose_lambda(q, length, k)
    centres: List[Letters] = []
    if lam > 0:
        sequence = debruijn_sequence(q, lam, budget).letters
        for window in debruijn_windows(sequence, length, lam):
            canonical = canonical_letters(window)
            if canonical not in centres:
                centres.append(canonical)
        logger.info(f"de Bruijn sampler: lambda={lam}, {len(centres)} windows for k={k}")
    else:
        logger.warning(f"q={q} exceeds k*length={k * length}; no de Bruijn order fits")

    if len(centres) < k and (fill or not centres):
        centres.extend(_fill_from_gaps(language.fixed_length_view(), centres, k))

    words = tuple(Word.of(c, q) for c in centres)
    return CentreSet(words, METHOD, lam, language, k)

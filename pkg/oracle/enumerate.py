"""
Necklace Centres - Exhaustive Enumeration
Ground-truth languages and brute-force counterparts of the counting and ranking code.
"""

import logging
from collections import Counter
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import get_settings
from core.counting import count_fixed_content, count_necklaces
from core.errors import ResourceLimitError
from core.models import Family, ForbiddenSet, LanguageSpec, Letters, Necklace
from core.words import canonical_letters, generate_necklaces, necklace_of

logger = logging.getLogger(__name__)


def language_size(language: LanguageSpec) -> int:
    """Exact number of necklaces in the language, from the counting formulas."""
    if language.family is Family.FIXED_CONTENT:
        return count_fixed_content(language.content)
    return sum(count_necklaces(language.q, n, language.forbidden_set) for n in language.lengths)


def enumerate_language(language: LanguageSpec, cap: Optional[int] = None) -> List[Necklace]:
    """
    Every necklace of the language, lexicographically sorted.

    Raises:
        ResourceLimitError: If the language is larger than the oracle cap.
    """
    cap = cap if cap is not None else get_settings().oracle_cap
    size = language_size(language)
    if size > cap:
        raise ResourceLimitError(f"{language.describe()} has {size} necklaces, oracle cap is {cap}")

    found: List[Letters] = []
    for n in language.lengths:
        for letters in generate_necklaces(language.q, n, language.content):
            if language.forbidden_set.avoided_by(letters):
                found.append(letters)
    found.sort()
    logger.debug(f"Enumerated {len(found)} necklaces of {language.describe()}")
    return [necklace_of(letters, language.q) for letters in found]


def all_words(q: int, n: int) -> Iterable[Letters]:
    return product(range(1, q + 1), repeat=n)


def brute_necklaces(q: int, n: int, forbidden: Optional[ForbiddenSet] = None) -> List[Letters]:
    """Canonical forms of all words of length n, by direct canonicalization."""
    forbidden = forbidden or ForbiddenSet.empty(q)
    found = {canonical_letters(x) for x in all_words(q, n) if forbidden.avoided_by(x)}
    return sorted(found)


def brute_count_cyclic(q: int, n: int, forbidden: ForbiddenSet) -> int:
    return sum(1 for x in all_words(q, n) if forbidden.avoided_by(x))


def brute_rank(boundary: Sequence[int], necklaces: Sequence[Letters]) -> int:
    """Members of a necklace list smaller than the boundary word."""
    boundary = tuple(boundary)
    return sum(1 for n in necklaces if n < boundary)


def _occurrences(text: Letters, pattern: Letters) -> Iterable[int]:
    m = len(pattern)
    return (i for i in range(len(text) - m + 1) if text[i:i + m] == pattern)


def brute_b_prime(w: Letters, forbidden: ForbiddenSet, l: int, t: int, j: int,
                  prefixes: Iterable[Letters] = (), suffixes: Iterable[Letters] = ()) -> int:
    """Direct count of the b_prime word set over all q^t candidates."""
    heads = [()] + [tuple(p) for p in prefixes]
    tails = [()] + [tuple(s) for s in suffixes]
    w = tuple(w)
    total = 0
    for v in all_words(forbidden.q, t):
        if v[:j] != w[:j]:
            continue
        if not all(v[s:] > w for s in range(t - l, t)):
            continue
        clean = True
        for p in heads:
            for s in tails:
                text = p + v + s
                for f in forbidden.words:
                    for i in _occurrences(text, f):
                        # only occurrences touching v count
                        if i < len(p) + t and i + len(f) > len(p):
                            clean = False
        if clean:
            total += 1
    return total


def brute_count_A_table(w: Letters, forbidden: ForbiddenSet) -> Dict[Tuple[int, int], int]:
    """Classify every avoiding word by its first rotation below w and the agreement length."""
    w = tuple(w)
    n = len(w)
    table: Counter = Counter()
    for x in all_words(forbidden.q, n):
        if not forbidden.avoided_by(x):
            continue
        for t in range(n):
            rotation = x[t:] + x[:t]
            if rotation < w:
                j = 0
                while rotation[j] == w[j]:
                    j += 1
                table[(t, j)] += 1
                break
    return dict(table)

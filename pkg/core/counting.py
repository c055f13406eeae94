"""
Necklace Centres - Counting
Number-theoretic helpers and exact counts of cyclic words, necklaces and Lyndon words.
"""

import logging
from functools import lru_cache
from math import factorial, gcd
from typing import List, Optional

from .automaton import count_cyclic_avoiding_patterns
from .errors import ConsistencyError, InvalidInputError
from .models import CountKind, CountTable, ForbiddenSet, ParikhVector, Word

logger = logging.getLogger(__name__)

COUNT_METHODS = ("trace", "fragments", "enumerate")


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"expected a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


def divisors(n: int) -> List[int]:
    """Divisors of n in ascending order."""
    _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p, _ in _factorize(n):
        result -= result // p
    return result


def moebius_mu(n: int) -> int:
    _check_positive(n)
    factors = _factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def _forbidden_or_empty(q: int, forbidden: Optional[ForbiddenSet]) -> ForbiddenSet:
    if forbidden is None:
        return ForbiddenSet.empty(q)
    if forbidden.q != q:
        raise InvalidInputError(f"forbidden set is over q={forbidden.q}, expected q={q}")
    return forbidden


def count_cyclic_avoiding(q: int, length: int, forbidden: Optional[ForbiddenSet] = None,
                          method: str = "trace") -> int:
    """
    Number of length-``length`` words x whose periodic extension avoids every forbidden word.

    Args:
        q: Alphabet size.
        length: Word length.
        forbidden: Forbidden set (None for no restriction).
        method: ``trace`` (automaton closed walks), ``fragments`` (prefix/suffix
            fragment recursion, needs length >= longest forbidden word) or
            ``enumerate`` (brute force).

    Returns:
        C_q^length(F) as an exact integer.
    """
    _check_positive(length)
    forbidden = _forbidden_or_empty(q, forbidden)

    if method == "trace":
        return count_cyclic_avoiding_patterns(q, length, forbidden.words)
    if method == "fragments":
        from ranking.forbidden import count_cyclic_by_fragments
        if length < forbidden.max_len:
            # divisor terms of necklace counts land here
            logger.debug(f"length {length} is shorter than a forbidden word; counting by trace")
            return count_cyclic_avoiding_patterns(q, length, forbidden.words)
        return count_cyclic_by_fragments(q, length, forbidden)
    if method == "enumerate":
        from oracle.enumerate import brute_count_cyclic
        return brute_count_cyclic(q, length, forbidden)
    raise InvalidInputError(f"unknown counting method {method!r}; choose from {COUNT_METHODS}")


def count_necklaces(q: int, length: int, forbidden: Optional[ForbiddenSet] = None,
                    method: str = "trace") -> int:
    """
    Necklaces of the given length avoiding F: (1/length) * sum_{d | length} phi(d) C^{length/d}.
    """
    _check_positive(length)
    total = sum(
        euler_phi(d) * count_cyclic_avoiding(q, length // d, forbidden, method)
        for d in divisors(length)
    )
    if total % length:
        raise ConsistencyError(f"necklace sum {total} is not divisible by length {length}")
    return total // length


def count_lyndon(q: int, length: int, forbidden: Optional[ForbiddenSet] = None,
                 method: str = "trace") -> int:
    """Lyndon words avoiding F: sum_{d | length} mu(d) N^{length/d}."""
    _check_positive(length)
    return sum(
        moebius_mu(d) * count_necklaces(q, length // d, forbidden, method)
        for d in divisors(length)
    )


def count_fixed_content(content: ParikhVector) -> int:
    """
    Necklaces with a given Parikh vector:
    (1/n) * sum_{d | gcd(P)} phi(d) * multinomial(n/d; P/d).
    """
    n = content.length
    g = 0
    for c in content.counts:
        g = gcd(g, c)
    total = 0
    for d in divisors(g):
        multinomial = factorial(n // d)
        for c in content.counts:
            multinomial //= factorial(c // d)
        total += euler_phi(d) * multinomial
    if total % n:
        raise ConsistencyError(f"fixed-content sum {total} is not divisible by {n}")
    return total // n


def count_necklaces_with_prefix(prefix: Word, length: int,
                                forbidden: Optional[ForbiddenSet] = None) -> int:
    """
    Necklaces of the given length avoiding F whose canonical form starts with prefix.

    Delegates to the rank-difference formula of the forbidden-word ranker.
    """
    if len(prefix) > length:
        raise InvalidInputError(f"prefix {prefix} is longer than {length}")
    from ranking.forbidden import ForbiddenNecklaceRanker
    ranker = ForbiddenNecklaceRanker(prefix.q, length, _forbidden_or_empty(prefix.q, forbidden))
    return ranker.count_with_prefix(prefix.letters)


def count_table(q: int, max_length: int, kind: CountKind,
                forbidden: Optional[ForbiddenSet] = None) -> CountTable:
    """Counts of one kind for every length 1..max_length."""
    _check_positive(max_length)
    counter = {
        CountKind.CYCLIC_WORDS: count_cyclic_avoiding,
        CountKind.NECKLACES: count_necklaces,
        CountKind.LYNDON: count_lyndon,
    }[kind]
    counts = {n: counter(q, n, forbidden) for n in range(1, max_length + 1)}
    logger.debug(f"{kind.value} table up to length {max_length}: {counts}")
    return CountTable(kind=kind, counts=counts)

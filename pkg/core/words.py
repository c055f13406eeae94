"""
Necklace Centres - Cyclic Word Primitives
Canonical rotations, cyclic shifts, subword multisets and the overlap distance.
"""

import logging
from collections import Counter
from math import gcd
from typing import Iterator, List, Optional, Sequence, Set, Tuple, Union

from .errors import InvalidInputError
from .models import Distance, Letters, Necklace, ParikhVector, SubwordMultiset, Word

logger = logging.getLogger(__name__)

WordLike = Union[Word, Necklace]

REPRESENTATIVES = ("lcm", "product")


def least_rotation_index(letters: Sequence[int]) -> int:
    """
    Start index of the lexicographically least rotation (Booth's algorithm).

    Args:
        letters: Non-empty sequence.

    Returns:
        Index i such that letters[i:] + letters[:i] is minimal.
    """
    s = list(letters) * 2
    failure = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = failure[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != s[k + i + 1]:
            # i == -1 here
            if sj < s[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k % len(letters)


def prefix_function(letters: Sequence[int]) -> List[int]:
    """KMP prefix function: pi[i] is the longest proper border of letters[:i + 1]."""
    pi = [0] * len(letters)
    for i in range(1, len(letters)):
        b = pi[i - 1]
        while b and letters[i] != letters[b]:
            b = pi[b - 1]
        if letters[i] == letters[b]:
            b += 1
        pi[i] = b
    return pi


def period_of(letters: Sequence[int]) -> int:
    """Smallest d dividing len(letters) with letters equal to its shift by d."""
    n = len(letters)
    p = n - prefix_function(letters)[-1]
    return p if n % p == 0 else n


def canonical_letters(letters: Sequence[int]) -> Letters:
    letters = tuple(letters)
    if not letters:
        raise InvalidInputError("empty word has no canonical rotation")
    i = least_rotation_index(letters)
    return letters[i:] + letters[:i]


def is_necklace(letters: Sequence[int]) -> bool:
    return canonical_letters(letters) == tuple(letters)


def is_lyndon(letters: Sequence[int]) -> bool:
    return is_necklace(letters) and period_of(letters) == len(letters)


def necklace_ceiling(letters: Sequence[int], q: int) -> Letters:
    """
    Least necklace of the same length that is not smaller than letters.

    Starts from the least prenecklace at or above letters, then steps through
    prenecklace successors until one is a necklace.
    """
    letters = tuple(letters)
    n = len(letters)
    if not n:
        raise InvalidInputError("empty word has no necklace ceiling")
    p = 1
    candidate = letters
    for i in range(1, n):
        if letters[i] > letters[i - p]:
            p = i + 1
        elif letters[i] < letters[i - p]:
            candidate = tuple(letters[k % p] for k in range(n))
            break
    while n % p:
        i = max(k for k in range(n) if candidate[k] < q)
        head = candidate[:i] + (candidate[i] + 1,)
        p = i + 1
        candidate = tuple(head[k % p] for k in range(n))
    return candidate


def canonical_rotation(w: Word) -> Necklace:
    """
    Least rotation of w together with its period.

    Raises:
        InvalidInputError: If w is empty.
    """
    letters = canonical_letters(w.letters)
    return Necklace(Word(letters, w.alphabet), period_of(letters))


def necklace_of(letters: Sequence[int], q: int) -> Necklace:
    return canonical_rotation(Word.of(letters, q))


def cyclic_shift(w: Word, i: int) -> Word:
    """
    Move the length-i suffix of w to the front.

    Args:
        w: Word to shift.
        i: Suffix length, 0 <= i <= |w|.
    """
    n = len(w)
    if i < 0 or i > n:
        raise InvalidInputError(f"shift {i} outside 0..{n}")
    letters = w.letters
    return Word(letters[n - i:] + letters[:n - i], w.alphabet)


def _word_of(x: WordLike) -> Word:
    return x.canonical if isinstance(x, Necklace) else x


def same_length_representatives(alpha: WordLike, beta: WordLike,
                                representative: str = "lcm") -> Tuple[Word, Word]:
    """
    Powers of alpha and beta brought to a common length.

    Args:
        alpha: First necklace (or word).
        beta: Second necklace (or word).
        representative: ``lcm`` for the least common length, ``product`` for |alpha|*|beta|.

    Returns:
        (alpha^(L/|alpha|), beta^(L/|beta|)).
    """
    a, b = _word_of(alpha), _word_of(beta)
    n, m = len(a), len(b)
    if representative == "lcm":
        length = n * m // gcd(n, m)
    elif representative == "product":
        length = n * m
    else:
        raise InvalidInputError(f"unknown representative length {representative!r}")
    return (
        Word(a.letters * (length // n), a.alphabet),
        Word(b.letters * (length // m), b.alphabet),
    )


def cyclic_subwords(letters: Sequence[int], length: int) -> Iterator[Letters]:
    """Every cyclic subword of the given length, one per start position."""
    letters = tuple(letters)
    n = len(letters)
    doubled = letters * (length // n + 2)
    for start in range(n):
        yield doubled[start:start + length]


def _subword_counter(letters: Letters, length: int) -> Counter:
    return Counter(cyclic_subwords(letters, length))


def subword_multiset(w: WordLike) -> SubwordMultiset:
    """Multiset of all cyclic subwords of w of lengths 1..|w|."""
    letters = _word_of(w).letters
    counts: Counter = Counter()
    for length in range(1, len(letters) + 1):
        counts.update(_subword_counter(letters, length))
    return SubwordMultiset(counts=dict(counts), base_length=len(letters))


def intersection_size(a: Letters, b: Letters) -> int:
    """Size of the intersection of the subword multisets of two equal-length words."""
    total = 0
    for length in range(1, len(a) + 1):
        ca = _subword_counter(a, length)
        cb = _subword_counter(b, length)
        level = sum((ca & cb).values())
        if level == 0:
            # no common subword of this length means none longer either
            break
        total += level
    return total


def overlap_distance(alpha: WordLike, beta: WordLike, representative: str = "lcm") -> Distance:
    """
    Overlap distance between two necklaces.

    Args:
        alpha: First necklace.
        beta: Second necklace.
        representative: Common-length rule, see :func:`same_length_representatives`.

    Returns:
        Distance L^2 / I, zero when the representatives agree, infinity when I = 0.
    """
    a, b = same_length_representatives(alpha, beta, representative)
    length = len(a)
    common = intersection_size(a.letters, b.letters)
    if common == 0:
        return Distance.infinite()
    if common == length * length:
        return Distance.of(0)
    return Distance.of(length * length, common)


def longest_shared_subword(a: Sequence[int], b: Sequence[int]) -> int:
    """
    Longest l <= max(|a|, |b|) such that the periodic extensions of a and b
    share a subword of length l.
    """
    best = 0
    for length in range(1, max(len(a), len(b)) + 1):
        if set(cyclic_subwords(a, length)).isdisjoint(cyclic_subwords(b, length)):
            break
        best = length
    return best


def subwords_of_length(words: Sequence[Sequence[int]], length: int) -> Set[Letters]:
    """Union of the length-l cyclic subwords of several words."""
    found: Set[Letters] = set()
    for w in words:
        found.update(cyclic_subwords(w, length))
    return found


def generate_necklaces(q: int, n: int, content: Optional[ParikhVector] = None) -> Iterator[Letters]:
    """
    Necklaces of length n over 1..q in lexicographic order (FKM generation).

    With ``content``, branches that over-use a character are pruned and only
    necklaces with exactly that Parikh vector are produced.
    """
    if n < 1:
        raise InvalidInputError(f"length must be >= 1, got {n}")
    limits = content.counts if content is not None else None
    used = [0] * (q + 1)
    a = [0] * (n + 1)

    def place(t: int, c: int) -> bool:
        if limits is not None and used[c] >= limits[c - 1]:
            return False
        a[t] = c
        used[c] += 1
        return True

    def generate(t: int, p: int) -> Iterator[Letters]:
        if t > n:
            if n % p == 0:
                yield tuple(a[1:n + 1])
            return
        if t == 1:
            choices = range(1, q + 1)
            for c in choices:
                if place(1, c):
                    yield from generate(2, 1)
                    used[c] -= 1
            return
        c = a[t - p]
        if place(t, c):
            yield from generate(t + 1, p)
            used[c] -= 1
        for c in range(a[t - p] + 1, q + 1):
            if place(t, c):
                yield from generate(t + 1, t)
                used[c] -= 1

    yield from generate(1, 1)

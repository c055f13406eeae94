"""
Necklace Centres - Ranking With Forbidden Words
Ranks, unranks and prefix counts for necklaces avoiding a forbidden set.

Words x of length l "below" a boundary word w of length n are those whose
necklace, brought to length n, is smaller than w. A rotation of x^(n/l) is
below w exactly when one of the patterns w[:j] + s (s < w[j]) starts there,
so every set below w is a difference of two avoidance counts. The same sets
also split by the first rotation below w (count_A), each part a sum of b_prime
counts; contexts built with method="recursion" size them that way.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from threading import Lock
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from core.automaton import automaton_for, count_cyclic_avoiding_patterns
from core.counting import count_necklaces, divisors, moebius_mu
from core.errors import ConsistencyError, InvalidInputError
from core.models import ForbiddenSet, Letters, Necklace, Word
from core.words import (
    canonical_letters,
    is_necklace,
    necklace_ceiling,
    necklace_of,
    period_of,
    prefix_function,
)

logger = logging.getLogger(__name__)

Fragments = FrozenSet[Letters]

OMEGA_READINGS = ("subword", "suffix")
WEIGHTINGS = ("period", "length")
# how below-w sets are sized: automaton difference or the A-set decomposition over b_prime
SIZE_METHODS = ("automaton", "recursion")
A_METHODS = ("walk", "recursion")


def below_patterns(letters: Letters) -> Tuple[Letters, ...]:
    """Patterns w[:j] + s with s < w[j]; a word starting with one is smaller than w."""
    return tuple(letters[:j] + (s,) for j in range(len(letters)) for s in range(1, letters[j]))


@lru_cache(maxsize=256)
def _fragment_tables(forbidden: ForbiddenSet) -> Tuple[frozenset, frozenset, frozenset, frozenset]:
    words = frozenset(forbidden.words)
    prefixes = frozenset(f[:i] for f in forbidden.words for i in range(1, len(f)))
    suffixes = frozenset(f[i:] for f in forbidden.words for i in range(len(f) + 1))
    subwords = frozenset(
        f[i:k] for f in forbidden.words for i in range(len(f)) for k in range(i + 1, len(f) + 1)
    )
    return words, prefixes, suffixes, subwords


def theta(prefixes: Iterable[Letters], sigma: int, forbidden: ForbiddenSet) -> Fragments:
    """
    Live forbidden-word prefixes after appending sigma.

    Args:
        prefixes: Proper prefixes of forbidden words ending the text so far.
        sigma: Appended character.
        forbidden: Forbidden set.

    Returns:
        {p + sigma : p in prefixes or empty, p + sigma a proper prefix of some forbidden word}.
    """
    _, proper, _, _ = _fragment_tables(forbidden)
    result = set()
    for p in set(prefixes) | {()}:
        candidate = tuple(p) + (sigma,)
        if candidate in proper:
            result.add(candidate)
    return frozenset(result)


def omega(suffixes: Iterable[Letters], sigma: int, forbidden: ForbiddenSet,
          reading: str = "subword") -> Fragments:
    """
    Start fragments after appending sigma.

    Members that are suffixes of a forbidden word are kept. Under the
    ``subword`` reading a member grows by sigma while it stays a subword of
    some forbidden word; under the ``suffix`` reading only while it stays a suffix.
    """
    if reading not in OMEGA_READINGS:
        raise InvalidInputError(f"unknown omega reading {reading!r}")
    _, _, tails, subwords = _fragment_tables(forbidden)
    grow = subwords if reading == "subword" else tails
    result = set()
    for s in suffixes:
        s = tuple(s)
        if s in tails:
            result.add(s)
        extended = s + (sigma,)
        if extended in grow:
            result.add(extended)
    return frozenset(result)


def prefix_closure(prefixes: Iterable[Letters], forbidden: ForbiddenSet) -> Fragments:
    """Every suffix of the given words that is a proper prefix of a forbidden word."""
    _, proper, _, _ = _fragment_tables(forbidden)
    return frozenset(
        tuple(p)[i:] for p in prefixes for i in range(len(p)) if tuple(p)[i:] in proper
    )


def _completes(live: Fragments, sigma: int, words: frozenset) -> bool:
    if (sigma,) in words:
        return True
    return any(a + (sigma,) in words for a in live)


def _crosses(head: Letters, tail: Letters, words: frozenset) -> bool:
    """True if a forbidden word occurs in head + tail across the junction."""
    text = head + tail
    cut = len(head)
    for f in words:
        m = len(f)
        for k in range(max(0, cut - m + 1), cut):
            if k + m <= len(text) and text[k:k + m] == f:
                return True
    return False


@dataclass
class RankContext:
    """
    Boundary word w, forbidden set and the memo shared by one computation.

    A context is single-owner while in use; separate contexts may run on separate threads.
    """
    w: Word
    forbidden: ForbiddenSet
    memo: Dict[tuple, int] = field(default_factory=dict)
    use_memo: bool = True
    method: str = "automaton"

    def __post_init__(self):
        if self.method not in SIZE_METHODS:
            raise InvalidInputError(f"unknown size method {self.method!r}; choose from {SIZE_METHODS}")
        if self.forbidden.q != self.w.q:
            raise InvalidInputError("boundary word and forbidden set use different alphabets")
        pi = prefix_function(self.w.letters)
        # border[m]: longest proper border of w[:m]
        self._border = [0, 0] + [pi[m - 1] for m in range(2, len(self.w) + 1)]
        self._below = below_patterns(self.w.letters)

    @property
    def letters(self) -> Letters:
        return self.w.letters

    @property
    def q(self) -> int:
        return self.w.q

    @property
    def length(self) -> int:
        return len(self.w)

    @property
    def below(self) -> Tuple[Letters, ...]:
        return self._below

    def recall(self, key: tuple) -> Optional[int]:
        return self.memo.get(key) if self.use_memo else None

    def store(self, key: tuple, value: int) -> int:
        if self.use_memo:
            self.memo[key] = value
        return value

    def advance_tie(self, tie: int, sigma: int) -> Optional[int]:
        """
        Track suffixes still equal to a prefix of w after appending sigma.

        Returns the longest tied length, or None when some suffix fell below w.
        """
        w, n = self.letters, self.length
        tied = 0
        b = tie
        while True:
            if b < n:
                if sigma < w[b]:
                    return None
                if sigma == w[b]:
                    tied = max(tied, b + 1)
            if b == 0:
                return tied
            b = self._border[b]


def b_prime(ctx: RankContext, l: int, t: int, j: int,
            prefixes: Iterable[Letters] = (), suffixes: Iterable[Letters] = ()) -> int:
    """
    Count words v of length t such that:

    - no forbidden word occurs in p + v + s overlapping v, for p in prefixes or
      empty and s in suffixes or empty;
    - v starts with w[:j];
    - every non-empty suffix of the last l characters of v is greater than w.

    Args:
        ctx: Rank context carrying w, the forbidden set and the memo.
        l: Length of the tail whose suffixes must exceed w.
        t: Length of v.
        j: Length of the forced prefix.
        prefixes: Proper prefixes of forbidden words preceding v.
        suffixes: Proper suffixes of forbidden words following v.

    Returns:
        Exact count.
    """
    if min(l, t, j) < 0:
        raise InvalidInputError(f"negative argument in b_prime(l={l}, t={t}, j={j})")
    if j > t:
        raise InvalidInputError(f"forced prefix j={j} is longer than t={t}")
    if l > t:
        raise InvalidInputError(f"tail l={l} is longer than t={t}")
    if j > ctx.length:
        raise InvalidInputError(f"forced prefix j={j} is longer than w")
    # t = 0 still checks p + s across the empty v
    live = prefix_closure(prefixes, ctx.forbidden)
    tails = frozenset(tuple(s) for s in suffixes)
    return _walk(ctx, l, t, j, tails, 0, live, 0)


def _walk(ctx: RankContext, l: int, t: int, j: int, tails: Fragments,
          i: int, live: Fragments, tie: int) -> int:
    words = _fragment_tables(ctx.forbidden)[0]
    if i == t:
        if tie:
            return 0
        if any(_crosses(a, s, words) for a in live for s in tails):
            return 0
        return 1

    key = ("B", l, t, j, tails, i, live, tie)
    cached = ctx.recall(key)
    if cached is not None:
        return cached

    total = 0
    choices = (ctx.letters[i],) if i < j else range(1, ctx.q + 1)
    in_tail = i >= t - l
    for sigma in choices:
        if _completes(live, sigma, words):
            continue
        next_tie = 0
        if in_tail:
            next_tie = ctx.advance_tie(tie, sigma)
            if next_tie is None:
                continue
        total += _walk(ctx, l, t, j, tails, i + 1, theta(live, sigma, ctx.forbidden), next_tie)
    return ctx.store(key, total)


def count_A(ctx: RankContext, t: int, j: int, method: str = "walk") -> int:
    """
    Words x of length n avoiding F whose first rotation below w starts at t,
    agreeing with w on exactly j characters.

    ``walk`` counts closed walks, in the coordinates of that rotation, over the
    automaton of F plus the below-w patterns: the first j characters follow w,
    the next one is smaller than w[j], and no below-w pattern may start in the
    last t positions (those are the earlier rotations, which must not be below w).
    ``recursion`` assembles the count from b_prime and needs a necklace boundary.
    """
    n, w, q = ctx.length, ctx.letters, ctx.q
    if not (0 <= t < n and 0 <= j < n):
        raise InvalidInputError(f"count_A needs 0 <= t, j < {n}, got t={t}, j={j}")
    if method not in A_METHODS:
        raise InvalidInputError(f"unknown count_A method {method!r}; choose from {A_METHODS}")
    key = ("A", method, t, j)
    cached = ctx.recall(key)
    if cached is not None:
        return cached
    if w[j] == 1:
        return ctx.store(key, 0)
    if method == "recursion":
        return ctx.store(key, _count_A_from_b_prime(ctx, t, j))

    forbidden_count = len(ctx.forbidden.words)
    patterns = tuple(ctx.forbidden.words) + ctx.below
    automaton = automaton_for(q, patterns)
    banned = set(range(n - t, n))

    def rejected(state: int, position: int) -> bool:
        for index in automaton.outputs(state):
            if index < forbidden_count:
                return True
            start = (position - len(patterns[index]) + 1) % n
            if start in banned:
                return True
        return False

    total = 0
    for origin in range(automaton.size):
        if any(index < forbidden_count for index in automaton.outputs(origin)):
            continue
        current = {origin: 1}
        for position in range(n):
            if position < j:
                choices = (w[position],)
            elif position == j:
                choices = range(1, w[j])
            else:
                choices = range(1, q + 1)
            following: Dict[int, int] = defaultdict(int)
            for state, ways in current.items():
                for c in choices:
                    target = automaton.step(state, c)
                    if not rejected(target, position):
                        following[target] += ways
            current = following
        total += current.get(origin, 0)
    return ctx.store(key, total)


def _count_A_from_b_prime(ctx: RankContext, t: int, j: int) -> int:
    """
    Sum of b_prime terms over the rotation y = w[:j] + sigma + z.

    With w a necklace, an earlier rotation whose text is a proper prefix of w
    is below w unless that prefix reaches back into w[:j] and w repeats with
    that period. When the earlier rotations stay inside z (t + j < n) every
    such tie fails and sigma ranges over 1..w[j]-1. Otherwise delta is the
    longest border of w[:j] among those earlier rotations: sigma must be at
    least w[delta], and sigma = w[delta] starts the suffix conditions at
    j - delta, where the repeating ties are added back one word at a time.
    """
    n, w = ctx.length, ctx.letters
    if not is_necklace(w):
        raise InvalidInputError(f"the b_prime decomposition needs a necklace boundary, got {ctx.w}")
    if t + j < n:
        branches = [(sigma, n - t, ()) for sigma in range(1, w[j])]
    else:
        reach = min(j - 1, t - (n - j))
        delta = max(e for e in range(reach + 1) if w[j - e:j] == w[:e])
        branches = [(sigma, j + 1, ()) for sigma in range(w[delta] + 1, w[j])]
        if w[delta] < w[j]:
            start = j - delta
            ties = tuple(k for k in range(n - j, n - start + 1) if w[k:] == w[:n - k])
            branches.append((w[delta], start, ties))

    # enough fixed text after the cut that no forbidden word wraps past it
    closing = max(0, ctx.forbidden.max_len - 1)
    total = 0
    for sigma, tail_start, ties in branches:
        head = w[:j] + (sigma,)
        grow = min(n - j - 1, max(0, closing - len(head)))
        for extra in itertools.product(range(1, ctx.q + 1), repeat=grow):
            fixed = head + extra
            if len(fixed) == n:
                total += _rotation_in_A(ctx, fixed, t, j)
                continue
            total += _closed_b_prime(ctx, fixed, tail_start)
            total += sum(_rotation_in_A(ctx, y, t, j) for y in _tie_completions(ctx, fixed, ties))
    logger.debug(f"count_A({t}, {j}) below {ctx.w} by b_prime = {total}")
    return total


def _closed_b_prime(ctx: RankContext, fixed: Letters, tail_start: int) -> int:
    """
    Completions z of the cyclic word fixed + z counted by one b_prime call.

    Suffixes starting at tail_start or later must be greater than w. Those
    starting inside fixed are decided here unless they tie with a prefix of w;
    the longest tie is handed to b_prime as a forced prefix.
    """
    n, w = ctx.length, ctx.letters
    words = _fragment_tables(ctx.forbidden)[0]
    if any(_occurs(fixed, f) for f in words):
        return 0
    a = len(fixed)
    free = n - a
    forced = 0
    for p in range(tail_start, a):
        suffix = fixed[p:]
        if suffix == w[:len(suffix)]:
            forced = a - p
            break
        if suffix < w:
            return 0
    tail = forced + free if tail_start < a else n - tail_start
    return b_prime(ctx, tail, forced + free, forced, [fixed[:a - forced]], [fixed])


def _tie_completions(ctx: RankContext, fixed: Letters, ties: Iterable[int]) -> FrozenSet[Letters]:
    """Rotations fixed + z whose last k characters spell w[:k], for each allowed tie length k."""
    n, w = ctx.length, ctx.letters
    a = len(fixed)
    found = set()
    for k in ties:
        y = fixed + w[a - (n - k):k]
        if y[n - k:] == w[:k]:
            found.add(y)
    return frozenset(found)


def _rotation_in_A(ctx: RankContext, y: Letters, t: int, j: int) -> int:
    n, w = ctx.length, ctx.letters
    if y[:j] != w[:j] or y[j] >= w[j]:
        return 0
    if any(y[p:] + y[:p] < w for p in range(n - t, n)):
        return 0
    return 1 if ctx.forbidden.avoided_by(y) else 0


def _occurs(text: Letters, pattern: Letters) -> bool:
    m = len(pattern)
    return any(text[i:i + m] == pattern for i in range(len(text) - m + 1))


def size_T(ctx: RankContext, l: int) -> int:
    """
    Words x of length l avoiding F with necklace of x^(n/l) below w.

    The context's method picks the automaton difference or the sum of
    count_A over the least necklace boundary of length l.
    """
    n = ctx.length
    if l < 1 or n % l:
        raise InvalidInputError(f"{l} does not divide the boundary length {n}")
    key = ("T", l)
    cached = ctx.recall(key)
    if cached is not None:
        return cached
    if ctx.method == "recursion":
        return ctx.store(key, _size_T_by_parts(ctx, l))
    words = ctx.forbidden.words
    value = (count_cyclic_avoiding_patterns(ctx.q, l, words)
             - count_cyclic_avoiding_patterns(ctx.q, l, words + ctx.below))
    return ctx.store(key, value)


def _size_T_by_parts(ctx: RankContext, l: int) -> int:
    # <x>^(n/l) < w  iff  <x> < w[:l], or <x> == w[:l] and w[:l]^(n/l) < w
    head = ctx.letters[:l]
    ceiling = necklace_ceiling(head, ctx.q)
    if l == ctx.length and ceiling == ctx.letters:
        sub = ctx
    else:
        sub = RankContext(Word.of(ceiling, ctx.q), ctx.forbidden, use_memo=ctx.use_memo,
                          method=ctx.method)
    total = sum(count_A(sub, t, j, method="recursion") for t in range(l) for j in range(l))
    if (l < ctx.length and is_necklace(head) and head * (ctx.length // l) < ctx.letters
            and ctx.forbidden.avoided_by(head)):
        total += period_of(head)
    return total


def size_T_prime(ctx: RankContext, l: int) -> int:
    """Aperiodic members of the size_T set: sum over d | l of mu(l/d) * size_T(d)."""
    if l < 1 or ctx.length % l:
        raise InvalidInputError(f"{l} does not divide the boundary length {ctx.length}")
    return sum(moebius_mu(l // d) * size_T(ctx, d) for d in divisors(l))


def _context(w: Word, forbidden: Optional[ForbiddenSet], ctx: Optional[RankContext]) -> RankContext:
    if ctx is not None:
        return ctx
    return RankContext(w, forbidden if forbidden is not None else ForbiddenSet.empty(w.q))


def rank_lyndon(w: Word, forbidden: Optional[ForbiddenSet] = None,
                ctx: Optional[RankContext] = None) -> int:
    """Lyndon words of length |w| avoiding F that are smaller than w."""
    ctx = _context(w, forbidden, ctx)
    n = ctx.length
    aperiodic = size_T_prime(ctx, n)
    if aperiodic % n:
        raise ConsistencyError(f"aperiodic count {aperiodic} below {w} is not divisible by {n}")
    return aperiodic // n


def rank_necklace(w: Word, forbidden: Optional[ForbiddenSet] = None,
                  weighting: str = "period", ctx: Optional[RankContext] = None) -> int:
    """
    Necklaces of length |w| avoiding F whose canonical form is smaller than w.

    Args:
        w: Boundary word (need not be a necklace nor avoid F).
        forbidden: Forbidden set.
        weighting: ``period`` divides each aperiodic count by its own length d;
            ``length`` divides the whole below-w count by |w| and is exact only
            when no periodic word lies below w.
        ctx: Optional context to share a memo across calls with the same w.
    """
    ctx = _context(w, forbidden, ctx)
    n = ctx.length
    if weighting == "period":
        total = 0
        for d in divisors(n):
            aperiodic = size_T_prime(ctx, d)
            if aperiodic % d:
                raise ConsistencyError(f"aperiodic count {aperiodic} at length {d} is not divisible by {d}")
            total += aperiodic // d
        return total
    if weighting == "length":
        below = size_T(ctx, n)
        if below % n:
            raise ConsistencyError(f"below-{w} count {below} is not divisible by {n}")
        return below // n
    raise InvalidInputError(f"unknown weighting {weighting!r}; choose from {WEIGHTINGS}")


def count_cyclic_by_fragments(q: int, length: int, forbidden: ForbiddenSet,
                              reading: str = "subword") -> int:
    """
    Cyclic avoidance count from a left-to-right walk over prefix and start fragments.

    Occurrences inside the word are caught with the live prefixes (theta);
    occurrences wrapping around are caught at the end by joining an end
    fragment with a start fragment. Start fragments are prefixes of the word:
    only the current prefix grows (omega on that single member), every
    earlier prefix that is a suffix of a forbidden word is frozen.
    Valid once length >= longest forbidden word.
    """
    if not forbidden:
        return q ** length
    if length < forbidden.max_len:
        raise InvalidInputError(
            f"fragment counting needs length >= {forbidden.max_len}, got {length}"
        )
    words = _fragment_tables(forbidden)[0]
    # (live prefixes, growing word prefix or None, frozen start fragments)
    State = Tuple[Fragments, Optional[Letters], Fragments]
    states: Dict[State, int] = {(frozenset(), (), frozenset()): 1}
    for _ in range(length):
        following: Dict[State, int] = defaultdict(int)
        for (live, head, frozen), ways in states.items():
            for sigma in range(1, q + 1):
                if _completes(live, sigma, words):
                    continue
                if head is None:
                    grown: Fragments = frozenset()
                    next_head = None
                else:
                    grown = omega((head,), sigma, forbidden, reading)
                    extended = head + (sigma,)
                    next_head = extended if extended in grown else None
                frozen_next = (frozen | grown) - {next_head, ()}
                following[(theta(live, sigma, forbidden), next_head, frozen_next)] += ways
        states = following
    total = 0
    for (live, head, frozen), ways in states.items():
        starts = frozen | {head} if head else frozen
        if not any(a + b in words for a in live for b in starts):
            total += ways
    return total


class ForbiddenNecklaceRanker:
    """
    Rank, unrank and prefix counts for necklaces of one length avoiding F.

    Ranks are cached per instance; the cache is guarded so one ranker can be
    shared by worker threads.
    """

    def __init__(self, q: int, length: int, forbidden: Optional[ForbiddenSet] = None,
                 weighting: str = "period", method: str = "automaton"):
        if length < 1:
            raise InvalidInputError(f"length must be >= 1, got {length}")
        if method not in SIZE_METHODS:
            raise InvalidInputError(f"unknown size method {method!r}; choose from {SIZE_METHODS}")
        self.q = q
        self.length = length
        self.forbidden = forbidden if forbidden is not None else ForbiddenSet.empty(q)
        self.weighting = weighting
        self.method = method

        self._ranks: Dict[Letters, int] = {}
        self._lock = Lock()
        self._count: Optional[int] = None

    def count(self) -> int:
        if self._count is None:
            self._count = count_necklaces(self.q, self.length, self.forbidden)
        return self._count

    def contains(self, letters: Letters) -> bool:
        letters = tuple(letters)
        return (len(letters) == self.length and is_necklace(letters)
                and self.forbidden.avoided_by(letters))

    def rank(self, letters: Letters) -> int:
        """Necklaces in the language smaller than the boundary word."""
        letters = tuple(letters)
        if len(letters) != self.length:
            raise InvalidInputError(f"boundary word has length {len(letters)}, expected {self.length}")
        with self._lock:
            cached = self._ranks.get(letters)
        if cached is not None:
            return cached
        ctx = RankContext(Word.of(letters, self.q), self.forbidden, method=self.method)
        value = rank_necklace(ctx.w, weighting=self.weighting, ctx=ctx)
        with self._lock:
            self._ranks[letters] = value
        return value

    def rank_lyndon(self, letters: Letters) -> int:
        ctx = RankContext(Word.of(letters, self.q), self.forbidden, method=self.method)
        return rank_lyndon(ctx.w, ctx=ctx)

    def count_with_prefix(self, prefix: Letters) -> int:
        """Necklaces in the language whose canonical form starts with prefix."""
        prefix = tuple(prefix)
        if not prefix:
            return self.count()
        if len(prefix) > self.length:
            return 0
        rest = self.length - len(prefix)
        top = prefix + (self.q,) * rest
        bottom = prefix + (1,) * rest
        return self.rank(top) - self.rank(bottom) + (1 if self.contains(top) else 0)

    def unrank(self, r: int) -> Letters:
        """
        The necklace with exactly r smaller necklaces in the language.

        Built left to right: at each position take the largest character
        whose all-ones completion still ranks at most r.
        """
        total = self.count()
        if not 0 <= r < total:
            raise InvalidInputError(f"rank {r} outside 0..{total - 1}")
        prefix: Tuple[int, ...] = ()
        for i in range(self.length):
            rest = self.length - i - 1
            for sigma in range(self.q, 0, -1):
                if sigma == 1 or self.rank(prefix + (sigma,) + (1,) * rest) <= r:
                    prefix += (sigma,)
                    break
        if not self.contains(prefix) or self.rank(prefix) != r:
            raise ConsistencyError(f"unrank({r}) produced {prefix}, which does not rank back to {r}")
        return prefix


def unrank_necklace(r: int, length: int, q: int,
                    forbidden: Optional[ForbiddenSet] = None) -> Necklace:
    """The necklace of length ``length`` avoiding F with rank r."""
    letters = ForbiddenNecklaceRanker(q, length, forbidden).unrank(r)
    return necklace_of(letters, q)


def canonical_rank(letters: Letters, q: int, forbidden: Optional[ForbiddenSet] = None) -> int:
    """Rank of the necklace class of letters (its canonical form is the boundary)."""
    canonical = canonical_letters(letters)
    return ForbiddenNecklaceRanker(q, len(canonical), forbidden).rank(canonical)

"""
Tests for ranking and unranking necklaces that avoid forbidden words.
"""

import itertools
import random
from collections import Counter

import pytest

from core.errors import ConsistencyError, InvalidInputError
from core.models import ForbiddenSet, Word
from core.words import canonical_letters, period_of
from oracle.enumerate import all_words, brute_b_prime, brute_count_A_table, brute_necklaces, brute_rank
from ranking.forbidden import (
    ForbiddenNecklaceRanker,
    RankContext,
    b_prime,
    below_patterns,
    canonical_rank,
    count_A,
    omega,
    rank_lyndon,
    rank_necklace,
    size_T,
    size_T_prime,
    theta,
    unrank_necklace,
)
from tests.helpers import FORBIDDEN_CASES, forbidden, letters, text, w


def _random_instance(rng: random.Random):
    n = rng.randint(2, 6)
    boundary = tuple(rng.randint(1, 2) for _ in range(n))
    raw = [tuple(rng.randint(1, 2) for _ in range(rng.randint(2, 3))) for _ in range(rng.randint(1, 2))]
    fs = ForbiddenSet.normalize(raw, 2)
    t = rng.randint(0, 8)
    j = rng.randint(0, min(t, n))
    l = rng.randint(0, t)
    heads = sorted({f[:i] for f in fs.words for i in range(1, len(f))})
    tails = sorted({f[i:] for f in fs.words for i in range(1, len(f))})
    prefixes = [p for p in heads if rng.random() < 0.5]
    suffixes = [s for s in tails if rng.random() < 0.5]
    return boundary, fs, l, t, j, prefixes, suffixes


class TestFragments:
    def test_theta(self):
        fs = forbidden("abb")
        assert theta([letters("a")], 2, fs) == {letters("ab")}
        assert theta([], 1, fs) == {letters("a")}
        assert theta([letters("ab")], 1, fs) == {letters("a")}

    def test_omega(self):
        fs = forbidden("abb")
        assert letters("bb") in omega([letters("bb")], 1, fs)
        assert omega([], 1, fs) == frozenset()
        assert omega([letters("b")], 2, fs) == {letters("b"), letters("bb")}

    def test_omega_suffix_reading_stops_at_non_suffixes(self):
        fs = forbidden("aba")
        assert omega([letters("b")], 1, fs, reading="subword") == {letters("ba")}
        assert omega([letters("b")], 1, fs, reading="suffix") == {letters("ba")}
        assert omega([letters("a")], 2, fs, reading="suffix") == {letters("a")}
        assert omega([letters("a")], 2, fs, reading="subword") == {letters("a"), letters("ab")}

    def test_below_patterns(self):
        assert below_patterns(letters("abb")) == (letters("aa"), letters("aba"))


class TestBPrime:
    def test_empty_word(self):
        ctx = RankContext(w("ab"), forbidden("aa"))
        assert b_prime(ctx, 0, 0, 0) == 1

    def test_empty_word_still_checks_the_junction(self):
        fs = forbidden("ab,bba")
        ctx = RankContext(w("bba"), fs)
        # bb + a spells bba with nothing in between
        assert b_prime(ctx, 0, 0, 0, [letters("bb")], [letters("a")]) == 0
        assert b_prime(ctx, 0, 0, 0, [letters("bb")], [letters("b")]) == 1
        assert brute_b_prime(letters("bba"), fs, 0, 0, 0, [letters("bb")], [letters("a")]) == 0

    def test_forced_tail_equal_to_prefix_of_w(self):
        ctx = RankContext(w("abab"), ForbiddenSet.empty(2))
        # v = w[:3] has itself as a suffix that is a prefix of w, hence smaller
        assert b_prime(ctx, 3, 3, 3) == 0

    def test_unconstrained_counts_everything(self):
        ctx = RankContext(w("bb"), ForbiddenSet.empty(2))
        assert b_prime(ctx, 0, 5, 0) == 2 ** 5

    def test_argument_checks(self):
        ctx = RankContext(w("ab"), ForbiddenSet.empty(2))
        with pytest.raises(InvalidInputError):
            b_prime(ctx, 0, 2, 3)
        with pytest.raises(InvalidInputError):
            b_prime(ctx, 3, 2, 0)
        with pytest.raises(InvalidInputError):
            b_prime(ctx, 0, 4, 3)

    def test_matches_enumeration_on_random_instances(self):
        rng = random.Random(123)
        for case in range(500):
            boundary, fs, l, t, j, prefixes, suffixes = _random_instance(rng)
            ctx = RankContext(Word.of(boundary, 2), fs)
            expected = brute_b_prime(boundary, fs, l, t, j, prefixes, suffixes)
            got = b_prime(ctx, l, t, j, prefixes, suffixes)
            assert got == expected, (case, text(boundary), fs.encode(), l, t, j, prefixes, suffixes)

    def test_memo_does_not_change_results(self):
        rng = random.Random(5)
        for _ in range(50):
            boundary, fs, l, t, j, prefixes, suffixes = _random_instance(rng)
            with_memo = RankContext(Word.of(boundary, 2), fs)
            without = RankContext(Word.of(boundary, 2), fs, use_memo=False)
            assert b_prime(with_memo, l, t, j, prefixes, suffixes) == \
                b_prime(without, l, t, j, prefixes, suffixes)


class TestBelowSets:
    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    def test_size_T_matches_enumeration(self, spec):
        fs = forbidden(spec)
        for boundary in all_words(2, 6):
            ctx = RankContext(Word.of(boundary, 2), fs)
            for l in (1, 2, 3, 6):
                expected = sum(
                    1 for x in all_words(2, l)
                    if fs.avoided_by(x) and canonical_letters(x * (6 // l)) < boundary
                )
                assert size_T(ctx, l) == expected, (text(boundary), l)

    def test_size_T_prime_counts_aperiodic_words(self):
        fs = forbidden("bb")
        for boundary in all_words(2, 6):
            ctx = RankContext(Word.of(boundary, 2), fs)
            for l in (2, 3, 6):
                expected = sum(
                    1 for x in all_words(2, l)
                    if fs.avoided_by(x) and period_of(x) == l
                    and canonical_letters(x * (6 // l)) < boundary
                )
                assert size_T_prime(ctx, l) == expected

    def test_length_must_divide(self):
        ctx = RankContext(w("aabb"), ForbiddenSet.empty(2))
        with pytest.raises(InvalidInputError):
            size_T(ctx, 3)

    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    def test_count_A_matches_classification(self, spec):
        fs = forbidden(spec)
        for boundary in all_words(2, 5):
            ctx = RankContext(Word.of(boundary, 2), fs)
            table = brute_count_A_table(boundary, fs)
            total = 0
            for t, j in itertools.product(range(5), repeat=2):
                value = count_A(ctx, t, j)
                assert value == table.get((t, j), 0), (text(boundary), t, j)
                total += value
            assert total == size_T(ctx, 5)

    def test_count_A_range(self):
        ctx = RankContext(w("aabb"), ForbiddenSet.empty(2))
        with pytest.raises(InvalidInputError):
            count_A(ctx, 4, 0)
        with pytest.raises(InvalidInputError):
            count_A(ctx, 0, 0, method="closed-form")


class TestRecursion:
    @pytest.mark.parametrize("spec", FORBIDDEN_CASES + ["abb,bab"])
    @pytest.mark.parametrize("n", [5, 6])
    def test_count_A_from_b_prime_matches_classification(self, spec, n):
        fs = forbidden(spec)
        for boundary in brute_necklaces(2, n):
            ctx = RankContext(Word.of(boundary, 2), fs)
            table = brute_count_A_table(boundary, fs)
            for t, j in itertools.product(range(n), repeat=2):
                assert count_A(ctx, t, j, method="recursion") == table.get((t, j), 0), \
                    (text(boundary), t, j)

    def test_count_A_from_b_prime_needs_a_necklace(self):
        ctx = RankContext(w("ba"), ForbiddenSet.empty(2))
        with pytest.raises(InvalidInputError):
            count_A(ctx, 0, 0, method="recursion")

    @pytest.mark.parametrize("spec", FORBIDDEN_CASES + ["abb,bab"])
    def test_size_T_methods_agree(self, spec):
        fs = forbidden(spec)
        for boundary in all_words(2, 6):
            automaton = RankContext(Word.of(boundary, 2), fs)
            recursion = RankContext(Word.of(boundary, 2), fs, method="recursion")
            for l in (1, 2, 3, 6):
                assert size_T(recursion, l) == size_T(automaton, l), (text(boundary), l)

    def test_size_T_methods_agree_on_three_letters(self):
        fs = forbidden("ca", 3)
        for boundary in all_words(3, 4):
            automaton = RankContext(Word.of(boundary, 3), fs)
            recursion = RankContext(Word.of(boundary, 3), fs, method="recursion")
            for l in (1, 2, 4):
                assert size_T(recursion, l) == size_T(automaton, l), (text(boundary), l)

    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    @pytest.mark.parametrize("n", [4, 6])
    def test_ranker_matches_enumeration(self, spec, n):
        fs = forbidden(spec)
        necklaces = brute_necklaces(2, n, fs)
        ranker = ForbiddenNecklaceRanker(2, n, fs, method="recursion")
        for boundary in all_words(2, n):
            assert ranker.rank(boundary) == brute_rank(boundary, necklaces), text(boundary)

    def test_unknown_size_method(self):
        with pytest.raises(InvalidInputError):
            RankContext(w("ab"), ForbiddenSet.empty(2), method="guess")
        with pytest.raises(InvalidInputError):
            ForbiddenNecklaceRanker(2, 4, method="guess")

    def test_b_prime_memo_stays_polynomial(self):
        fs = forbidden("bb,aab")
        ctx = RankContext(w("abaabb"), fs)
        n = ctx.length
        proper = {f[:i] for f in fs.words for i in range(1, len(f))}
        for t in range(n + 1):
            for l in range(t + 1):
                for j in range(t + 1):
                    b_prime(ctx, l, t, j)
        keys = [key for key in ctx.memo if key[0] == "B"]
        assert keys
        # the live set is fixed by its longest member
        assert len({key[6] for key in keys}) <= len(proper) + 1
        groups = Counter(key[1:5] for key in keys)
        for (_, t, _, _), size in groups.items():
            assert size <= t * (len(proper) + 1) * (n + 1)


class TestRank:
    def test_small_examples(self):
        assert rank_necklace(w("aabb")) == 2
        assert rank_necklace(w("aaaa")) == 0
        assert rank_necklace(w("bbbb")) == 5
        assert rank_lyndon(w("abbb")) == 2

    def test_length_weighting_is_inexact_with_periodic_words_below(self):
        # aaaa contributes one rotation instead of four
        with pytest.raises(ConsistencyError):
            rank_necklace(w("aabb"), weighting="length")
        assert rank_necklace(w("aaaa"), weighting="length") == 0

    def test_unknown_weighting(self):
        with pytest.raises(InvalidInputError):
            rank_necklace(w("aabb"), weighting="mean")

    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_matches_enumeration_for_every_word(self, spec, n):
        fs = forbidden(spec)
        necklaces = brute_necklaces(2, n, fs)
        lyndon = [x for x in necklaces if period_of(x) == n]
        ranker = ForbiddenNecklaceRanker(2, n, fs)
        for boundary in all_words(2, n):
            assert ranker.rank(boundary) == brute_rank(boundary, necklaces), text(boundary)
            assert ranker.rank_lyndon(boundary) == brute_rank(boundary, lyndon), text(boundary)

    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_unrank_inverts_rank(self, spec, n):
        fs = forbidden(spec)
        ranker = ForbiddenNecklaceRanker(2, n, fs)
        necklaces = brute_necklaces(2, n, fs)
        assert ranker.count() == len(necklaces)
        for r, necklace in enumerate(necklaces):
            assert ranker.unrank(r) == necklace
            assert ranker.rank(necklace) == r

    def test_unrank_examples(self):
        assert unrank_necklace(3, 4, 2).canonical == w("abab")
        assert unrank_necklace(0, 6, 2, forbidden("bb")).canonical == w("aaaaaa")

    def test_unrank_out_of_range(self):
        ranker = ForbiddenNecklaceRanker(2, 4)
        with pytest.raises(InvalidInputError):
            ranker.unrank(6)
        with pytest.raises(InvalidInputError):
            ranker.unrank(-1)

    def test_canonical_rank_ignores_rotation(self):
        assert canonical_rank(letters("bbaa"), 2) == canonical_rank(letters("aabb"), 2) == 2

    def test_rank_rejects_wrong_length(self):
        with pytest.raises(InvalidInputError):
            ForbiddenNecklaceRanker(2, 4).rank(letters("aab"))


class TestPrefixCounts:
    @pytest.mark.parametrize("spec", FORBIDDEN_CASES)
    def test_matches_enumeration(self, spec):
        fs = forbidden(spec)
        n = 6
        ranker = ForbiddenNecklaceRanker(2, n, fs)
        necklaces = brute_necklaces(2, n, fs)
        for size in range(0, n + 1):
            for prefix in all_words(2, size):
                expected = sum(1 for x in necklaces if x[:size] == prefix)
                assert ranker.count_with_prefix(prefix) == expected, text(prefix) if prefix else "empty"

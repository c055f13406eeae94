"""
Tests for cyclic word primitives and the overlap distance.
"""

import itertools
import random
from fractions import Fraction

import pytest

from core.errors import InvalidInputError
from core.models import Distance, ForbiddenSet, ParikhVector, Word
from core.words import (
    canonical_letters,
    canonical_rotation,
    cyclic_shift,
    generate_necklaces,
    intersection_size,
    is_lyndon,
    is_necklace,
    least_rotation_index,
    longest_shared_subword,
    necklace_ceiling,
    overlap_distance,
    period_of,
    same_length_representatives,
    subword_multiset,
)
from tests.helpers import letters, text, w

# binary length-4 necklaces in rank order
FOUR = ["aaaa", "aaab", "aabb", "abab", "abbb", "bbbb"]

INF = None
# exact distance matrix over FOUR (symmetric, zero diagonal)
FOUR_MATRIX = [
    ["0", "8/3", "16/3", "8", "16", INF],
    ["8/3", "0", "2", "8/3", "4", "16"],
    ["16/3", "2", "0", "8/3", "2", "16/3"],
    ["8", "8/3", "8/3", "0", "8/3", "8"],
    ["16", "4", "2", "8/3", "0", "8/3"],
    [INF, "16", "16/3", "8", "8/3", "0"],
]


def _expected(entry):
    return Distance.infinite() if entry is None else Distance(Fraction(entry))


class TestCanonicalRotation:
    def test_least_rotation(self):
        assert canonical_rotation(w("baa")).canonical == w("aab")
        assert canonical_rotation(w("abab")).period == 2
        assert canonical_rotation(w("bbab")).canonical == w("abbb")

    def test_matches_brute_minimum(self):
        rng = random.Random(123)
        for _ in range(300):
            n = rng.randint(1, 12)
            x = tuple(rng.randint(1, 3) for _ in range(n))
            assert canonical_letters(x) == min(x[i:] + x[:i] for i in range(n))
            assert x[least_rotation_index(x):] + x[:least_rotation_index(x)] == canonical_letters(x)

    def test_period(self):
        assert period_of(letters("aaaa")) == 1
        assert period_of(letters("abab")) == 2
        assert period_of(letters("aabaab")) == 3
        assert period_of(letters("aab")) == 3
        # a border that does not divide the length is not a period of the necklace
        assert period_of(letters("abaab")) == 5

    def test_necklace_and_lyndon(self):
        assert is_necklace(letters("aabb"))
        assert not is_necklace(letters("abba"))
        assert is_lyndon(letters("aabb"))
        assert not is_lyndon(letters("abab"))

    def test_necklace_ceiling(self):
        assert necklace_ceiling(letters("ba"), 2) == letters("bb")
        assert necklace_ceiling(letters("aba"), 2) == letters("abb")
        assert necklace_ceiling(letters("aabb"), 2) == letters("aabb")
        with pytest.raises(InvalidInputError):
            necklace_ceiling((), 2)

    @pytest.mark.parametrize("q,n", [(2, 6), (3, 4)])
    def test_necklace_ceiling_is_least_necklace_above(self, q, n):
        necklaces = [x for x in itertools.product(range(1, q + 1), repeat=n) if is_necklace(x)]
        for x in itertools.product(range(1, q + 1), repeat=n):
            assert necklace_ceiling(x, q) == min(y for y in necklaces if y >= x), text(x)

    def test_empty_word_rejected(self):
        with pytest.raises(InvalidInputError):
            canonical_letters(())
        with pytest.raises(InvalidInputError):
            Word.of((), 2)

    def test_letter_outside_alphabet(self):
        with pytest.raises(InvalidInputError):
            Word.of((1, 3), 2)
        with pytest.raises(InvalidInputError):
            w("abc", 2)


class TestCyclicShift:
    def test_moves_suffix_to_front(self):
        assert cyclic_shift(w("abcd", 4), 1) == w("dabc", 4)
        assert cyclic_shift(w("abcd", 4), 0) == w("abcd", 4)
        assert cyclic_shift(w("abcd", 4), 4) == w("abcd", 4)

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            cyclic_shift(w("ab"), 3)
        with pytest.raises(InvalidInputError):
            cyclic_shift(w("ab"), -1)


class TestRepresentatives:
    def test_lcm_lengths(self):
        a, b = same_length_representatives(w("ab"), w("abb"))
        assert a == w("ababab")
        assert b == w("abbabb")

    def test_product_lengths(self):
        a, b = same_length_representatives(w("ab"), w("abab"), "product")
        assert len(a) == len(b) == 8

    def test_unknown_rule(self):
        with pytest.raises(InvalidInputError):
            same_length_representatives(w("ab"), w("abb"), "max")


class TestSubwordMultiset:
    def test_total_is_square(self):
        for word in ("aab", "abab", "abbabb"):
            assert subword_multiset(w(word)).total == len(word) ** 2

    def test_levels(self):
        ms = subword_multiset(w("aab"))
        assert ms.of_length(1) == {(1,): 2, (2,): 1}
        assert ms.of_length(2) == {(1, 1): 1, (1, 2): 1, (2, 1): 1}

    def test_intersection_agrees_with_multisets(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(1, 7)
            a = tuple(rng.randint(1, 2) for _ in range(n))
            b = tuple(rng.randint(1, 2) for _ in range(n))
            expected = subword_multiset(Word.of(a, 2)).intersection_size(subword_multiset(Word.of(b, 2)))
            assert intersection_size(a, b) == expected


class TestOverlapDistance:
    def test_two_and_three_letter_example(self):
        a, b = same_length_representatives(w("ab"), w("abb"))
        assert intersection_size(a.letters, b.letters) == 11
        assert overlap_distance(w("ab"), w("abb")) == Distance.of(36, 11)
        # lcm and product lengths coincide for coprime lengths
        assert overlap_distance(w("ab"), w("abb"), "product") == Distance.of(36, 11)

    def test_length_four_matrix(self):
        for i, j in itertools.product(range(6), repeat=2):
            got = overlap_distance(w(FOUR[i]), w(FOUR[j]))
            assert got == _expected(FOUR_MATRIX[i][j]), (FOUR[i], FOUR[j])

    def test_symmetric_with_zero_diagonal(self):
        rng = random.Random(11)
        for _ in range(50):
            a = Word.of([rng.randint(1, 3) for _ in range(rng.randint(1, 6))], 3)
            b = Word.of([rng.randint(1, 3) for _ in range(rng.randint(1, 6))], 3)
            assert overlap_distance(a, b) == overlap_distance(b, a)
            assert overlap_distance(a, a) == Distance.of(0)

    def test_same_necklace_different_rotation(self):
        assert overlap_distance(w("aab"), w("aba")) == Distance.of(0)

    def test_powers_are_identical(self):
        assert overlap_distance(w("ab"), w("abab")) == Distance.of(0)
        assert overlap_distance(w("ab"), w("abab"), "product") == Distance.of(0)

    def test_disjoint_alphabets_are_infinitely_far(self):
        d = overlap_distance(w("aaaa"), w("bbbb"))
        assert d.is_infinite
        assert d > Distance.of(10 ** 9)


class TestDistance:
    def test_ordering_and_ratio(self):
        assert Distance.of(8, 3) < Distance.of(16, 3) < Distance.infinite()
        assert Distance.of(16, 3) / Distance.of(8, 3) == Distance.of(2)
        assert (Distance.infinite() / Distance.of(2)).is_infinite

    def test_json(self):
        assert Distance.of(16, 6).to_json() == {"num": 8, "den": 3}
        assert Distance.infinite().to_json() == "inf"
        assert Distance.from_json({"num": 8, "den": 3}) == Distance.of(8, 3)
        assert Distance.from_json("inf").is_infinite

    def test_str(self):
        assert str(Distance.of(36, 11)) == "36/11"
        assert Distance.of(36, 11).decimal(3) == "3.273"


class TestLongestSharedSubword:
    def test_examples(self):
        assert longest_shared_subword(letters("aaaa"), letters("aaab")) == 3
        assert longest_shared_subword(letters("aaaa"), letters("bbbb")) == 0
        assert longest_shared_subword(letters("abab"), letters("abab")) == 4

    def test_mixed_lengths_use_periodic_extension(self):
        # aa...a shares every length with the word a
        assert longest_shared_subword(letters("a"), letters("aaaa")) == 4


class TestGenerateNecklaces:
    def test_binary_length_four(self):
        assert [text(x) for x in generate_necklaces(2, 4)] == FOUR

    def test_matches_brute_force(self):
        for q, n in [(2, 7), (3, 5)]:
            brute = sorted({canonical_letters(x) for x in itertools.product(range(1, q + 1), repeat=n)})
            assert list(generate_necklaces(q, n)) == brute

    def test_fixed_content(self):
        got = [text(x) for x in generate_necklaces(2, 4, ParikhVector((2, 2)))]
        assert got == ["aabb", "abab"]

    def test_forbidden_set_normalization(self):
        fs = ForbiddenSet.normalize([letters("bb"), letters("abb"), letters("bb")], 2)
        assert fs.words == (letters("bb"),)
        assert fs.avoided_by(letters("aab"))
        # cyclic occurrence across the boundary
        assert not fs.avoided_by(letters("bab"))
        # a single b repeats forever
        assert not fs.avoided_by(letters("b"))

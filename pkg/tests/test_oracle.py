"""
Tests for enumeration, centre-set evaluation, the exact k-centre solver
and the ratio study.
"""

import itertools
from fractions import Fraction

import pandas as pd
import pytest

from config import reset_settings
from core.errors import InvalidInputError, ResourceLimitError
from core.models import CentreSet, Distance, LanguageSpec
from oracle import (
    DistanceMatrix,
    default_grid,
    enumerate_language,
    evaluate,
    language_size,
    optimal_kcentre,
    ratio_study,
)
from oracle.evaluate import RATIO_COLUMNS, coverage_length
from sampling import coverage_bounds, prefix_tree_sample
from tests.helpers import letters, w

L4 = LanguageSpec.fixed_length(2, 4)


def _centres(*names, language=L4, k=None):
    words = tuple(w(n, language.q) for n in names)
    return CentreSet(words, "external", 0, language, k or len(words))


class TestEnumeration:
    def test_fixed_length(self):
        assert [str(n) for n in enumerate_language(L4)] == ["aaaa", "aaab", "aabb", "abab", "abbb", "bbbb"]

    def test_max_length_includes_shorter_words(self):
        language = LanguageSpec.max_length(2, 3)
        assert [str(n) for n in enumerate_language(language)] == ["a", "aa", "aaa", "aab", "ab", "abb", "b", "bb", "bbb"]
        assert language_size(language) == 9

    def test_forbidden_and_content(self):
        assert language_size(LanguageSpec.with_forbidden(2, 6, [letters("bb")])) == 5
        assert language_size(LanguageSpec.fixed_content((5, 5))) == 26

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_language(L4, cap=3)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("NECKLACE_ORACLE_CAP", "5")
        reset_settings()
        with pytest.raises(ResourceLimitError):
            enumerate_language(L4)


class TestDistanceMatrix:
    def test_cache_is_symmetric(self):
        matrix = DistanceMatrix(2)
        assert matrix.distance(letters("aaaa"), letters("aabb")) == Distance.of(16, 3)
        assert matrix.distance(letters("aabb"), letters("aaaa")) == Distance.of(16, 3)
        assert len(matrix) == 1

    def test_threads_do_not_change_values(self):
        words = [n.letters for n in enumerate_language(LanguageSpec.fixed_length(2, 6))]
        serial = DistanceMatrix(2).table(words, words, threads=1)
        parallel = DistanceMatrix(2).table(words, words, threads=4)
        assert serial == parallel


class TestEvaluate:
    def test_two_centres(self):
        report = evaluate(_centres("aaab", "abbb"))
        assert report.max_min_distance == Distance.of(8, 3)
        assert report.lambda_observed == 3
        assert report.optimum is None
        assert report.ratio is None
        assert not report.infeasible

    def test_canonicalizes_centres(self):
        report = evaluate(_centres("abaa", "bbab"))
        assert report.max_min_distance == Distance.of(8, 3)

    def test_infeasible(self):
        report = evaluate(_centres("aaaa"))
        assert report.infeasible
        assert report.to_dict()["max_min_distance"] == "inf"
        assert report.to_dict()["infeasible"] is True

    def test_ratio_against_optimum(self):
        report = evaluate(_centres("aabb", k=1), optimum=Distance.of(16, 3))
        assert report.ratio == Distance.of(1)
        assert report.to_dict()["ratio"] == {"num": 1, "den": 1}

    def test_per_word_nearest(self):
        report = evaluate(_centres("aaab", "abbb"), per_word=True)
        nearest = {str(word): (str(centre), d) for word, centre, d in report.per_word_nearest}
        assert nearest["aaaa"] == ("aaab", Distance.of(8, 3))
        assert nearest["bbbb"] == ("abbb", Distance.of(8, 3))
        assert len(report.to_dict()["per_word_nearest"]) == 6

    def test_decimal_output(self):
        doc = evaluate(_centres("aaab", "abbb")).to_dict(decimal=True)
        assert doc["max_min_decimal"] == "2.666667"

    def test_coverage_length(self):
        assert coverage_length([letters("aaaa"), letters("bbbb")], [letters("aabb")]) == 2
        assert coverage_length([], [letters("ab")]) == 0


class TestOptimalKCentre:
    def test_single_centre(self):
        centres, optimum = optimal_kcentre(L4, 1)
        assert optimum == Distance.of(16, 3)
        assert [str(c) for c in centres.centres] == ["aabb"]
        assert centres.method == "optimal"

    def test_two_centres(self):
        centres, optimum = optimal_kcentre(L4, 2)
        assert optimum == Distance.of(8, 3)
        assert evaluate(centres).max_min_distance == optimum

    def test_matches_exhaustive_search(self):
        language = LanguageSpec.fixed_length(2, 6)
        words = [n.letters for n in enumerate_language(language)]
        matrix = DistanceMatrix(2)
        for k in (2, 3):
            _, optimum = optimal_kcentre(language, k, matrix=matrix)
            best = min(
                max(min((matrix.distance(v, c) for c in subset), key=Distance.sort_key)
                    for v in words)
                for subset in itertools.combinations(words, k)
            )
            assert optimum == best

    def test_k_covers_language(self):
        centres, optimum = optimal_kcentre(L4, 6)
        assert optimum == Distance.of(0)
        assert len(centres) == 6
        assert centres.lambda_achieved == 4

    def test_sampler_never_beats_optimum(self):
        language = LanguageSpec.fixed_length(2, 6)
        for k in (2, 3, 4):
            _, optimum = optimal_kcentre(language, k)
            sampled = evaluate(prefix_tree_sample(language, k), optimum=optimum)
            assert sampled.ratio.value >= 1

    def test_subset_cap(self):
        with pytest.raises(ResourceLimitError):
            optimal_kcentre(L4, 2, subset_cap=5)

    def test_rejects_bad_k(self):
        with pytest.raises(InvalidInputError):
            optimal_kcentre(L4, 0)


class TestRatioStudy:
    CELLS = [(LanguageSpec.fixed_length(2, 5), 2), (LanguageSpec.fixed_length(2, 6), 3)]

    def test_rows(self):
        frame = ratio_study(self.CELLS)
        assert isinstance(frame, pd.DataFrame)
        assert list(frame.columns) == RATIO_COLUMNS
        assert len(frame) == 4
        assert set(frame["status"]) == {"ok"}
        assert set(frame["method"]) == {"prefix-tree", "de-bruijn"}
        assert (frame["ratio_value"] >= 1).all()
        assert (frame["sampler_value"] >= frame["optimum_value"]).all()
        for row in frame.itertuples():
            loose, _ = coverage_bounds(int(row.length), int(row.lambda_achieved))
            assert Fraction(row.sampler_distance) <= loose

    def test_de_bruijn_ratio_bound_column(self):
        frame = ratio_study(self.CELLS[:1])
        row = frame[frame["method"] == "de-bruijn"].iloc[0]
        assert row["ratio_bound"] == 8.0

    def test_skipped_cells_are_recorded(self):
        frame = ratio_study(self.CELLS[1:], subset_cap=10)
        assert len(frame) == 2
        assert set(frame["status"]) == {"skipped"}
        assert all("exceed cap" in note for note in frame["note"])

    def test_threads_give_the_same_table(self):
        serial = ratio_study(self.CELLS[:1], threads=1)
        parallel = ratio_study(self.CELLS[:1], threads=3)
        pd.testing.assert_frame_equal(serial, parallel)

    def test_default_grid(self):
        grid = default_grid()
        assert len(grid) == 6
        assert {language.length for language, _ in grid} == {6, 8}
        assert {k for _, k in grid} == {2, 3, 4}

    def test_default_grid_stays_within_factor_eight(self):
        frame = ratio_study(default_grid())
        assert len(frame) == 12
        assert set(frame["status"]) == {"ok"}
        assert (frame["ratio_value"] >= 1).all()
        assert (frame["ratio_value"] <= 8).all()

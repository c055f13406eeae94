"""
Necklace Centres - Evaluation Harness
Exact distance matrices, centre-set evaluation, brute-force optimal k-centres
and the sampler-versus-optimum ratio study.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from math import comb
from threading import Lock
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from config import get_settings
from core.errors import InvalidInputError, NecklaceError, ResourceLimitError
from core.models import CentreSet, Distance, EvalReport, LanguageSpec, Letters, Word
from core.words import canonical_letters, longest_shared_subword, overlap_distance
from sampling.bounds import DEBRUIJN_FACTOR, theoretical_bounds
from sampling.debruijn import debruijn_sample
from sampling.prefix_tree import prefix_tree_sample

from .enumerate import enumerate_language

logger = logging.getLogger(__name__)

OPTIMAL_METHOD = "optimal"

RATIO_COLUMNS = [
    "family", "q", "length", "k", "method", "status", "lambda_achieved",
    "sampler_distance", "sampler_value", "optimum", "optimum_value",
    "ratio", "ratio_value", "distance_bound", "ratio_bound", "bound_note", "note",
]


class DistanceMatrix:
    """
    Overlap distances between canonical necklaces, cached by unordered pair.

    Thread-safe: fills may run on a worker pool, results do not depend on the schedule.
    """

    def __init__(self, q: int, representative: str = "lcm"):
        self.q = q
        self.representative = representative
        self._cache: Dict[Tuple[Letters, Letters], Distance] = {}
        self._lock = Lock()

    def __len__(self) -> int:
        return len(self._cache)

    def distance(self, a: Letters, b: Letters) -> Distance:
        key = (a, b) if a <= b else (b, a)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        value = overlap_distance(Word.of(a, self.q), Word.of(b, self.q), self.representative)
        with self._lock:
            self._cache[key] = value
        return value

    def fill(self, pairs: Iterable[Tuple[Letters, Letters]], threads: int = 1) -> None:
        pairs = list(pairs)
        if threads <= 1:
            for a, b in pairs:
                self.distance(a, b)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda pair: self.distance(*pair), pairs))

    def table(self, rows: Sequence[Letters], cols: Sequence[Letters],
              threads: int = 1) -> List[List[Distance]]:
        self.fill(((r, c) for r in rows for c in cols), threads)
        return [[self.distance(r, c) for c in cols] for r in rows]


def coverage_length(words: Sequence[Letters], centres: Sequence[Letters]) -> int:
    """Largest lambda such that every word shares a subword of length lambda with some centre."""
    if not words:
        return 0
    return min(max(longest_shared_subword(v, c) for c in centres) for v in words)


def evaluate(centres: CentreSet, language: Optional[LanguageSpec] = None,
             optimum: Optional[Distance] = None, matrix: Optional[DistanceMatrix] = None,
             threads: int = 1, cap: Optional[int] = None, per_word: bool = False) -> EvalReport:
    """
    Score a centre set against every word of the language.

    Args:
        centres: Centre set to evaluate.
        language: Language to evaluate over (defaults to the centre set's own).
        optimum: Known optimal value, used to fill in the ratio.
        matrix: Shared distance cache.
        threads: Worker threads for the distance fill.
        cap: Oracle size cap override.
        per_word: Include each word's nearest centre in the report.

    Returns:
        EvalReport with the max-min distance and the observed coverage length.
    """
    language = language or centres.language
    if not centres.centres:
        raise InvalidInputError("cannot evaluate an empty centre set")
    matrix = matrix or DistanceMatrix(language.q)
    words = [n.letters for n in enumerate_language(language, cap)]
    anchors = [canonical_letters(c.letters) for c in centres.centres]
    table = matrix.table(words, anchors, threads)

    worst = Distance.of(0)
    nearest = []
    for v, row in zip(words, table):
        index = min(range(len(anchors)), key=lambda i: row[i].sort_key())
        worst = max(worst, row[index])
        nearest.append((Word.of(v, language.q), Word.of(anchors[index], language.q), row[index]))

    report = EvalReport(
        language=language,
        k=centres.k,
        method=centres.method,
        max_min_distance=worst,
        lambda_observed=coverage_length(words, anchors),
        optimum=optimum,
        ratio=(worst / optimum) if optimum is not None else None,
        per_word_nearest=nearest if per_word else None,
    )
    if report.infeasible:
        logger.warning(f"Centre set for {language.describe()} leaves a word at infinite distance")
    logger.info(f"Evaluated {len(anchors)} centres over {len(words)} necklaces: max-min {worst}")
    return report


def optimal_kcentre(language: LanguageSpec, k: int, cap: Optional[int] = None,
                    subset_cap: Optional[int] = None, matrix: Optional[DistanceMatrix] = None,
                    threads: int = 1) -> Tuple[CentreSet, Distance]:
    """
    Exact k-centre by branch and bound over index-ordered k-subsets.

    A partial choice is pruned when even the best remaining candidates cannot
    beat the incumbent; pruning only discards subsets that cannot win.

    Raises:
        ResourceLimitError: If C(n, k) exceeds the subset cap.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    words = [n.letters for n in enumerate_language(language, cap)]
    n = len(words)
    if k >= n:
        centres = CentreSet(tuple(Word.of(v, language.q) for v in words), OPTIMAL_METHOD,
                            max(language.lengths), language, k)
        return centres, Distance.of(0)

    subset_cap = subset_cap if subset_cap is not None else get_settings().subset_cap
    subsets = comb(n, k)
    if subsets > subset_cap:
        raise ResourceLimitError(f"{subsets} subsets of size {k} from {n} necklaces exceed cap {subset_cap}")

    matrix = matrix or DistanceMatrix(language.q)
    table = [[d.sort_key() for d in row] for row in matrix.table(words, words, threads)]
    infinity = float("inf")

    # suffix_min[s][v]: closest candidate with index >= s to word v
    suffix_min = [[infinity] * n for _ in range(n + 1)]
    for s in range(n - 1, -1, -1):
        suffix_min[s] = [min(a, b) for a, b in zip(suffix_min[s + 1], table[s])]

    best_value = None
    best_choice: List[int] = []

    def search(start: int, chosen: List[int], current: List) -> None:
        nonlocal best_value, best_choice
        if len(chosen) == k:
            value = max(current)
            if best_value is None or value < best_value:
                best_value, best_choice = value, list(chosen)
            return
        bound = max(min(c, s) for c, s in zip(current, suffix_min[start]))
        if best_value is not None and bound >= best_value:
            return
        need = k - len(chosen)
        for c in range(start, n - need + 1):
            chosen.append(c)
            search(c + 1, chosen, [min(a, b) for a, b in zip(current, table[c])])
            chosen.pop()

    search(0, [], [infinity] * n)

    optimum = Distance.infinite() if best_value == infinity else Distance(best_value)
    picked = [words[i] for i in best_choice]
    centres = CentreSet(tuple(Word.of(v, language.q) for v in picked), OPTIMAL_METHOD,
                        coverage_length(words, picked), language, k)
    logger.info(f"Optimal {k}-centre over {n} necklaces: {optimum}")
    return centres, optimum


def default_grid() -> List[Tuple[LanguageSpec, int]]:
    """Binary fixed-length cells small enough for the exact solver."""
    return [(LanguageSpec.fixed_length(2, length), k) for length in (6, 8) for k in (2, 3, 4)]


def _sample(method: str, language: LanguageSpec, k: int) -> CentreSet:
    if method == "prefix-tree":
        return prefix_tree_sample(language, k)
    if method == "de-bruijn":
        return debruijn_sample(language, k)
    raise InvalidInputError(f"unknown sampling method {method!r}")


def ratio_study(cells: Optional[Iterable[Tuple[LanguageSpec, int]]] = None,
                methods: Sequence[str] = ("prefix-tree", "de-bruijn"),
                cap: Optional[int] = None, subset_cap: Optional[int] = None,
                threads: int = 1) -> pd.DataFrame:
    """
    Sampler distance against the exact optimum on a grid of small instances.

    Cells that cannot be computed are recorded with status ``skipped``.

    Returns:
        DataFrame with one row per (cell, method), columns RATIO_COLUMNS.
    """
    rows = []
    for language, k in (cells if cells is not None else default_grid()):
        matrix = DistanceMatrix(language.q)
        base = {"family": language.family.value, "q": language.q, "length": language.length, "k": k}
        try:
            _, optimum = optimal_kcentre(language, k, cap, subset_cap, matrix, threads)
        except NecklaceError as e:
            logger.warning(f"Skipping {language.describe()} k={k}: {e}")
            for method in methods:
                rows.append({**base, "method": method, "status": "skipped", "note": str(e)})
            continue

        bounds = theoretical_bounds(language.q, language.length, k)
        for method in methods:
            try:
                centres = _sample(method, language, k)
                report = evaluate(centres, language, optimum, matrix, threads, cap)
            except NecklaceError as e:
                logger.warning(f"Skipping {method} on {language.describe()} k={k}: {e}")
                rows.append({**base, "method": method, "status": "skipped", "note": str(e)})
                continue
            if method == "prefix-tree":
                distance_bound, ratio_bound = bounds.upper_prefix, bounds.ratio_prefix
            else:
                distance_bound, ratio_bound = bounds.upper_debruijn, float(DEBRUIJN_FACTOR)
            rows.append({
                **base,
                "method": method,
                "status": "ok",
                "lambda_achieved": centres.lambda_achieved,
                "sampler_distance": str(report.max_min_distance),
                "sampler_value": float(report.max_min_distance.sort_key()),
                "optimum": str(optimum),
                "optimum_value": float(optimum.sort_key()),
                "ratio": str(report.ratio),
                "ratio_value": float(report.ratio.sort_key()),
                "distance_bound": distance_bound,
                "ratio_bound": ratio_bound,
                "bound_note": "" if distance_bound is not None else "log argument <= 1",
                "note": "",
            })
    frame = pd.DataFrame(rows, columns=RATIO_COLUMNS)
    logger.info(f"Ratio study: {len(frame)} rows, {int((frame['status'] == 'skipped').sum())} skipped")
    return frame

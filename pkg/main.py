"""
Necklace Centres - Main Entry Point
Command line for counting, ranking, sampling and evaluating necklace centres.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from config import get_settings
from core.counting import (
    COUNT_METHODS,
    count_cyclic_avoiding,
    count_fixed_content,
    count_lyndon,
    count_necklaces,
)
from core.encoding import ENCODINGS, LETTERS, format_letters, parse_letters, parse_word_list, word_separator
from core.errors import InvalidInputError, NecklaceError
from core.models import CentreSet, LanguageSpec
from core.words import canonical_letters
from oracle.evaluate import default_grid, evaluate, optimal_kcentre, ratio_study
from ranking.forbidden import SIZE_METHODS
from ranking.rankers import ranker_for
from results_db import get_store
from sampling.bounds import theoretical_bounds
from sampling.debruijn import debruijn_sample
from sampling.prefix_tree import prefix_tree_sample

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

SAMPLING_METHODS = {
    "prefix": "prefix-tree",
    "prefix-tree": "prefix-tree",
    "debruijn": "de-bruijn",
    "de-bruijn": "de-bruijn",
}

logger = logging.getLogger(__name__)


def setup_logging(level: str, log_file: Optional[str] = None) -> None:
    """Route logs to stderr (stdout carries documents) and optionally to a file."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def _emit(document: Dict[str, Any]) -> None:
    print(json.dumps(document, sort_keys=True, indent=2))


def _parse_content(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"content {text!r} is not a comma-separated list of integers") from None


def _parse_ints(text: str, name: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidInputError(f"{name} {text!r} is not a comma-separated list of integers") from None


def build_language(args: argparse.Namespace, required: bool = True) -> Optional[LanguageSpec]:
    """
    Language described by the common flags.

    Returns:
        LanguageSpec, or None when no length or content was given and required is False.
    """
    if args.content:
        if args.forbidden or args.max_length:
            raise InvalidInputError("--content cannot be combined with --forbidden or --max-length")
        language = LanguageSpec.fixed_content(_parse_content(args.content))
        if args.length is not None and args.length != language.length:
            raise InvalidInputError(f"content {args.content} sums to {language.length}, not -l {args.length}")
        return language
    if args.length is None:
        if required:
            raise InvalidInputError("a length (-l) or a content vector (--content) is required")
        return None
    if args.forbidden:
        words = parse_word_list(args.forbidden, args.q, args.encoding)
        return LanguageSpec.with_forbidden(args.q, args.length, words, args.max_length)
    if args.max_length:
        return LanguageSpec.max_length(args.q, args.length)
    return LanguageSpec.fixed_length(args.q, args.length)


def cmd_count(args: argparse.Namespace) -> int:
    language = build_language(args)
    if language.content is not None:
        print(f"necklaces: {count_fixed_content(language.content)}")
        return 0
    forbidden = language.forbidden_set
    cyclic = sum(count_cyclic_avoiding(language.q, n, forbidden, args.method) for n in language.lengths)
    necklaces = sum(count_necklaces(language.q, n, forbidden, args.method) for n in language.lengths)
    lyndon = sum(count_lyndon(language.q, n, forbidden, args.method) for n in language.lengths)
    print(f"cyclic-words: {cyclic}")
    print(f"necklaces: {necklaces}")
    print(f"lyndon: {lyndon}")
    if forbidden:
        print(f"forbidden: {word_separator(args.encoding).join(forbidden.encode(args.encoding))}")
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    language = build_language(args)
    if language.is_max_length:
        raise InvalidInputError("rank needs a single-length language; drop --max-length")
    letters = parse_letters(args.word, language.q, args.encoding)
    if len(letters) != language.length:
        raise InvalidInputError(f"word {args.word!r} has length {len(letters)}, expected {language.length}")
    boundary = letters if args.keep_rotation else canonical_letters(letters)
    print(f"rank: {ranker_for(language, args.size_method).rank(boundary)}")
    return 0


def cmd_unrank(args: argparse.Namespace) -> int:
    language = build_language(args)
    if language.is_max_length:
        raise InvalidInputError("unrank needs a single-length language; drop --max-length")
    print(format_letters(ranker_for(language, args.size_method).unrank(args.index), args.encoding))
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    language = build_language(args)
    method = SAMPLING_METHODS[args.method]
    if method == "prefix-tree":
        centres = prefix_tree_sample(language, args.k)
    else:
        centres = debruijn_sample(language, args.k, fill=not args.no_fill)
    _emit(centres.to_dict(args.encoding))
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    language = build_language(args)
    report = theoretical_bounds(language.q, language.length, args.k, language.content)
    _emit(report.to_dict())
    return 0


def _read_centres(path: str, language: Optional[LanguageSpec], encoding: str) -> CentreSet:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise InvalidInputError(f"cannot read centres file {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"centres file {path} is not JSON: {e}") from None
    return CentreSet.from_dict(data, encoding, language)


def cmd_evaluate(args: argparse.Namespace) -> int:
    language = build_language(args, required=False)
    centres = _read_centres(args.centres, language, args.encoding)
    optimum = None
    if args.with_optimum:
        _, optimum = optimal_kcentre(centres.language, centres.k, args.oracle_cap, threads=args.threads)
    report = evaluate(centres, centres.language, optimum, threads=args.threads,
                      cap=args.oracle_cap, per_word=args.per_word)
    if args.store:
        get_store(args.store).insert_evaluation(report)
    _emit(report.to_dict(args.encoding, args.decimal))
    return 0


def _study_cells(args: argparse.Namespace):
    if args.lengths is None and args.ks is None:
        return default_grid()
    lengths = _parse_ints(args.lengths or "6,8", "lengths")
    ks = _parse_ints(args.ks or "2,3,4", "k values")
    return [(LanguageSpec.fixed_length(args.q, n), k) for n in lengths for k in ks]


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.ratio_study:
        frame = ratio_study(_study_cells(args), cap=args.oracle_cap, threads=args.threads)
        if args.store:
            get_store(args.store).insert_ratio_cells(frame)
        if args.output:
            Path(args.output).parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(args.output, index=False)
            logger.info(f"Ratio study written to {args.output}")
        else:
            sys.stdout.write(frame.to_csv(index=False))
        return 0

    if args.k is None:
        raise InvalidInputError("oracle needs -k with --optimal-kcentre, or --ratio-study")
    language = build_language(args)
    centres, optimum = optimal_kcentre(language, args.k, args.oracle_cap, threads=args.threads)
    document = {"centres": centres.to_dict(args.encoding), "optimum": optimum.to_json()}
    if args.decimal:
        document["optimum_decimal"] = optimum.decimal()
    _emit(document)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", type=int, default=2, help="Alphabet size (default: 2)")
    common.add_argument("-l", "--length", type=int, default=None, help="Word length")
    common.add_argument("--forbidden", default=None,
                        help="Forbidden words, comma-separated (semicolon-separated with --encoding integers)")
    common.add_argument("--content", default=None, help="Parikh vector, e.g. 5,5")
    common.add_argument("--max-length", action="store_true", help="All lengths up to -l")
    common.add_argument("--encoding", choices=ENCODINGS, default=LETTERS)
    common.add_argument("--threads", type=int, default=1, help="Worker threads for distance fills")
    common.add_argument("--log-level", default=None, help="Logging level (default: NECKLACE_LOG_LEVEL or INFO)")
    common.add_argument("--log-file", default=None, help="Also log to this file")
    common.add_argument("--oracle-cap", type=int, default=None, help="Largest language the oracle enumerates")
    common.add_argument("--decimal", action="store_true", help="Add decimal approximations of distances")

    parser = argparse.ArgumentParser(
        description="Necklace Centres - k-centre sampling of necklace languages under the overlap distance"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="Count cyclic words, necklaces and Lyndon words")
    p.add_argument("--method", choices=COUNT_METHODS, default="trace")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("rank", parents=[common], help="Number of necklaces smaller than a word")
    p.add_argument("word")
    p.add_argument("--keep-rotation", action="store_true",
                   help="Rank the word as given instead of its canonical rotation")
    p.add_argument("--size-method", choices=SIZE_METHODS, default="automaton",
                   help="Size below-word sets by automaton difference or by the b_prime decomposition")
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser("unrank", parents=[common], help="Necklace with a given rank")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--size-method", choices=SIZE_METHODS, default="automaton")
    p.set_defaults(handler=cmd_unrank)

    p = sub.add_parser("sample", parents=[common], help="Choose k centres")
    p.add_argument("--method", choices=sorted(SAMPLING_METHODS), default="prefix")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--no-fill", action="store_true", help="de Bruijn: do not top up to k centres")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("bounds", parents=[common], help="Closed-form distance bounds")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("evaluate", parents=[common], help="Evaluate a centre set exhaustively")
    p.add_argument("--centres", required=True, help="Centre set document (JSON)")
    p.add_argument("--with-optimum", action="store_true", help="Also solve the exact k-centre problem")
    p.add_argument("--per-word", action="store_true", help="Report each word's nearest centre")
    p.add_argument("--store", default=None, help="Record the report in this results database")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("oracle", parents=[common], help="Exact optimum and ratio study")
    p.add_argument("--optimal-kcentre", action="store_true", help="Solve k-centre exactly (default)")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--ratio-study", action="store_true", help="Sampler/optimum ratios on a grid")
    p.add_argument("--lengths", default=None, help="Ratio-study lengths (default: 6,8)")
    p.add_argument("--ks", default=None, help="Ratio-study k values (default: 2,3,4)")
    p.add_argument("--output", default=None, help="Write the ratio-study CSV here")
    p.add_argument("--store", default=None, help="Record ratio-study cells in this results database")
    p.set_defaults(handler=cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point.

    Returns:
        Process exit status: 0, or the exit code of the error raised.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = get_settings()
        setup_logging(args.log_level or settings.log_level, args.log_file or settings.log_file)
        if args.threads < 1:
            raise InvalidInputError(f"--threads must be >= 1, got {args.threads}")
        return args.handler(args)
    except NecklaceError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

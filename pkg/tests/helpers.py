"""
Small constructors shared by the test modules.
"""

from typing import Sequence, Tuple

from core.encoding import format_letters, parse_letters
from core.models import ForbiddenSet, Word

# forbidden sets used by the counting and ranking gates
FORBIDDEN_CASES = ["", "bb", "aba", "bb,aab"]


def w(text: str, q: int = 2) -> Word:
    return Word.parse(text, q)


def letters(text: str, q: int = 2) -> Tuple[int, ...]:
    return parse_letters(text, q)


def text(word: Sequence[int]) -> str:
    return format_letters(word)


def forbidden(spec: str, q: int = 2) -> ForbiddenSet:
    if not spec:
        return ForbiddenSet.empty(q)
    return ForbiddenSet.normalize([parse_letters(part, q) for part in spec.split(",")], q)

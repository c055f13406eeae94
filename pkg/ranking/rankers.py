"""
Necklace Centres - Ranker Selection
The interface samplers use to navigate a language by rank.
"""

from typing import Protocol

from core.errors import InvalidInputError
from core.models import Family, LanguageSpec, Letters

from .fixed_content import FixedContentRanker
from .forbidden import ForbiddenNecklaceRanker


class NecklaceRanker(Protocol):
    """Rank queries over the necklaces of one length."""

    q: int
    length: int

    def count(self) -> int: ...

    def contains(self, letters: Letters) -> bool: ...

    def rank(self, letters: Letters) -> int: ...

    def count_with_prefix(self, prefix: Letters) -> int: ...

    def unrank(self, r: int) -> Letters: ...


def ranker_for(language: LanguageSpec, method: str = "automaton") -> NecklaceRanker:
    """
    Ranker for a language; max-length families are ranked at their top length.

    ``method`` sizes the below-w sets of forbidden-word rankers; fixed content ignores it.
    """
    language = language.fixed_length_view()
    if language.family is Family.FIXED_CONTENT:
        return FixedContentRanker(language.content)
    if language.family in (Family.FIXED_LENGTH, Family.FORBIDDEN):
        return ForbiddenNecklaceRanker(language.q, language.length, language.forbidden_set, method=method)
    raise InvalidInputError(f"no ranker for {language.family.value}")

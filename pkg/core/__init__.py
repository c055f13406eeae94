"""
Necklace Centres - Core Module
Cyclic words, overlap distance, pattern automata and exact counting.
"""

from .errors import (
    ConsistencyError,
    EmptyLanguageError,
    InvalidInputError,
    NecklaceError,
    ResourceLimitError,
)
from .models import (
    Alphabet,
    CentreSet,
    CountKind,
    CountTable,
    Distance,
    EvalReport,
    Family,
    ForbiddenSet,
    LanguageSpec,
    Necklace,
    ParikhVector,
    SubwordMultiset,
    Word,
)
from .words import (
    canonical_rotation,
    cyclic_shift,
    overlap_distance,
    same_length_representatives,
    subword_multiset,
)

__all__ = [
    "ConsistencyError",
    "EmptyLanguageError",
    "InvalidInputError",
    "NecklaceError",
    "ResourceLimitError",
    "Alphabet",
    "CentreSet",
    "CountKind",
    "CountTable",
    "Distance",
    "EvalReport",
    "Family",
    "ForbiddenSet",
    "LanguageSpec",
    "Necklace",
    "ParikhVector",
    "SubwordMultiset",
    "Word",
    "canonical_rotation",
    "cyclic_shift",
    "overlap_distance",
    "same_length_representatives",
    "subword_multiset",
]

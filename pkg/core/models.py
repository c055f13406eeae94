"""
Necklace Centres - Data Models
Type-safe dataclasses for words, necklaces, distances and languages.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .encoding import LETTERS, format_letters, parse_letters
from .errors import ConsistencyError, InvalidInputError

Letters = Tuple[int, ...]


class Family(Enum):
    """Supported language families."""
    FIXED_LENGTH = "fixed-length"
    MAX_LENGTH = "max-length"
    FIXED_CONTENT = "fixed-content"
    FORBIDDEN = "forbidden"
    MAX_LENGTH_FORBIDDEN = "max-length-forbidden"


class CountKind(Enum):
    """What a CountTable counts."""
    CYCLIC_WORDS = "cyclic-words"
    NECKLACES = "necklaces"
    LYNDON = "lyndon"


@dataclass(frozen=True, order=True)
class Alphabet:
    """
    Ordered alphabet of q characters indexed 1..q, 1 being the smallest.
    """
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise InvalidInputError(f"alphabet size must be >= 2, got {self.q}")

    def characters(self) -> range:
        return range(1, self.q + 1)


@dataclass(frozen=True, order=True)
class Word:
    """
    Non-empty sequence of character indices over an alphabet.
    """
    letters: Letters
    alphabet: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise InvalidInputError("word must be non-empty")
        q = self.alphabet.q
        for c in self.letters:
            if not isinstance(c, int) or c < 1 or c > q:
                raise InvalidInputError(f"letter {c!r} is outside the alphabet of size {q}")

    @classmethod
    def of(cls, letters: Sequence[int], q: int) -> "Word":
        return cls(tuple(letters), Alphabet(q))

    @classmethod
    def parse(cls, text: str, q: int, encoding: str = LETTERS) -> "Word":
        return cls(parse_letters(text, q, encoding), Alphabet(q))

    @property
    def q(self) -> int:
        return self.alphabet.q

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def encode(self, encoding: str = LETTERS) -> str:
        return format_letters(self.letters, encoding)


@dataclass(frozen=True, order=True)
class Necklace:
    """
    Equivalence class of a word under rotation, held by its least rotation.
    """
    canonical: Word
    period: int

    @property
    def letters(self) -> Letters:
        return self.canonical.letters

    @property
    def length(self) -> int:
        return len(self.canonical)

    @property
    def is_lyndon(self) -> bool:
        return self.period == self.length

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return str(self.canonical)


@total_ordering
@dataclass(frozen=True)
class Distance:
    """
    Overlap distance: an exact non-negative rational, or infinity (value None).

    Infinity compares greater than every finite value.
    """
    value: Optional[Fraction]

    @classmethod
    def infinite(cls) -> "Distance":
        return cls(None)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> "Distance":
        return cls(Fraction(numerator, denominator))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other: "Distance") -> bool:
        if not isinstance(other, Distance):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __truediv__(self, other: "Distance") -> "Distance":
        """Quotient of two distances, used for approximation ratios."""
        if self.value is None:
            return Distance.infinite()
        if other.value is None:
            return Distance.of(0)
        if other.value == 0:
            return Distance.of(1) if self.value == 0 else Distance.infinite()
        return Distance(self.value / other.value)

    def sort_key(self):
        return float("inf") if self.value is None else self.value

    def to_json(self) -> Any:
        if self.value is None:
            return "inf"
        return {"num": self.value.numerator, "den": self.value.denominator}

    @classmethod
    def from_json(cls, data: Any) -> "Distance":
        if data == "inf":
            return cls.infinite()
        return cls.of(int(data["num"]), int(data["den"]))

    def decimal(self, places: int = 6) -> str:
        if self.value is None:
            return "inf"
        return f"{float(self.value):.{places}f}"

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


@dataclass(frozen=True)
class SubwordMultiset:
    """
    Multiset of all cyclic subwords of a representative word.
    """
    counts: Mapping[Letters, int]
    base_length: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def of_length(self, length: int) -> Dict[Letters, int]:
        return {u: c for u, c in self.counts.items() if len(u) == length}

    def intersection_size(self, other: "SubwordMultiset") -> int:
        return sum(min(c, other.counts.get(u, 0)) for u, c in self.counts.items())


def _occurs_cyclically(pattern: Letters, letters: Letters) -> bool:
    """True if pattern occurs in the periodic extension of letters."""
    n, m = len(letters), len(pattern)
    span = n + m - 1
    extended = (letters * (span // n + 1))[:span]
    return any(extended[i:i + m] == pattern for i in range(n))


@dataclass(frozen=True)
class ForbiddenSet:
    """
    Normalized set of forbidden words: no member is a subword of another.
    """
    words: Tuple[Letters, ...]
    q: int

    @classmethod
    def normalize(cls, words: Sequence[Sequence[int]], q: int) -> "ForbiddenSet":
        """
        Build a forbidden set, dropping duplicates and any word containing another.

        Args:
            words: Candidate forbidden words as index sequences.
            q: Alphabet size.

        Returns:
            Normalized ForbiddenSet with words in sorted order.
        """
        candidates = set()
        for w in words:
            # Word() validates letters and non-emptiness
            candidates.add(Word.of(w, q).letters)

        def contains(longer: Letters, shorter: Letters) -> bool:
            m = len(shorter)
            return any(longer[i:i + m] == shorter for i in range(len(longer) - m + 1))

        kept = [
            f for f in candidates
            if not any(g != f and len(g) <= len(f) and contains(f, g) for g in candidates)
        ]
        return cls(tuple(sorted(kept)), q)

    @classmethod
    def empty(cls, q: int) -> "ForbiddenSet":
        return cls((), q)

    @property
    def max_len(self) -> int:
        return max((len(f) for f in self.words), default=0)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Letters]:
        return iter(self.words)

    def __bool__(self) -> bool:
        return bool(self.words)

    def avoided_by(self, letters: Letters) -> bool:
        """True if no forbidden word occurs cyclically in letters."""
        return not any(_occurs_cyclically(f, tuple(letters)) for f in self.words)

    def encode(self, encoding: str = LETTERS) -> List[str]:
        return [format_letters(f, encoding) for f in self.words]


@dataclass(frozen=True)
class ParikhVector:
    """
    Per-character occurrence counts; counts[i] belongs to character i + 1.
    """
    counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if any(c < 0 for c in self.counts):
            raise InvalidInputError(f"content counts must be non-negative, got {self.counts}")
        if sum(self.counts) < 1:
            raise InvalidInputError(f"content {self.counts} describes an empty word")

    @property
    def length(self) -> int:
        return sum(self.counts)

    @property
    def q(self) -> int:
        return len(self.counts)

    @classmethod
    def of_word(cls, letters: Sequence[int], q: int) -> "ParikhVector":
        counts = [0] * q
        for c in letters:
            counts[c - 1] += 1
        return cls(tuple(counts))

    def matches(self, letters: Sequence[int]) -> bool:
        return len(letters) == self.length and ParikhVector.of_word(letters, self.q) == self


@dataclass(frozen=True)
class CountTable:
    """Per-length counts of one kind."""
    kind: CountKind
    counts: Mapping[int, int]


@dataclass(frozen=True)
class LanguageSpec:
    """
    One language of necklaces: a family with its parameters.

    Max-length families read ``length`` as "length at most length".
    """
    family: Family
    q: int
    length: int
    content: Optional[ParikhVector] = None
    forbidden: Optional[ForbiddenSet] = None

    def __post_init__(self):
        Alphabet(self.q)
        if self.length < 1:
            raise InvalidInputError(f"length must be >= 1, got {self.length}")

        if self.family is Family.FIXED_CONTENT:
            if self.content is None:
                raise InvalidInputError("fixed-content language needs a content vector")
            if self.content.q != self.q:
                raise InvalidInputError(f"content {self.content.counts} does not have q={self.q} entries")
            if self.content.length != self.length:
                raise InvalidInputError(
                    f"content {self.content.counts} sums to {self.content.length}, not length {self.length}"
                )
        elif self.content is not None:
            raise InvalidInputError(f"content vector given for {self.family.value} language")

        if self.family in (Family.FORBIDDEN, Family.MAX_LENGTH_FORBIDDEN):
            if not self.forbidden:
                raise InvalidInputError(f"{self.family.value} language needs a non-empty forbidden set")
            if self.forbidden.q != self.q:
                raise InvalidInputError("forbidden set and language use different alphabets")
        elif self.forbidden:
            raise InvalidInputError(f"forbidden set given for {self.family.value} language")

    @classmethod
    def fixed_length(cls, q: int, length: int) -> "LanguageSpec":
        return cls(Family.FIXED_LENGTH, q, length)

    @classmethod
    def max_length(cls, q: int, length: int) -> "LanguageSpec":
        return cls(Family.MAX_LENGTH, q, length)

    @classmethod
    def fixed_content(cls, counts: Sequence[int]) -> "LanguageSpec":
        content = ParikhVector(tuple(counts))
        return cls(Family.FIXED_CONTENT, content.q, content.length, content=content)

    @classmethod
    def with_forbidden(cls, q: int, length: int, words: Sequence[Sequence[int]],
                       max_length: bool = False) -> "LanguageSpec":
        family = Family.MAX_LENGTH_FORBIDDEN if max_length else Family.FORBIDDEN
        return cls(family, q, length, forbidden=ForbiddenSet.normalize(words, q))

    @property
    def is_max_length(self) -> bool:
        return self.family in (Family.MAX_LENGTH, Family.MAX_LENGTH_FORBIDDEN)

    @property
    def lengths(self) -> range:
        if self.is_max_length:
            return range(1, self.length + 1)
        return range(self.length, self.length + 1)

    @property
    def forbidden_set(self) -> ForbiddenSet:
        return self.forbidden if self.forbidden is not None else ForbiddenSet.empty(self.q)

    def fixed_length_view(self) -> "LanguageSpec":
        """The length-exactly-``length`` slice of a max-length family."""
        if self.family is Family.MAX_LENGTH:
            return LanguageSpec.fixed_length(self.q, self.length)
        if self.family is Family.MAX_LENGTH_FORBIDDEN:
            return LanguageSpec(Family.FORBIDDEN, self.q, self.length, forbidden=self.forbidden)
        return self

    def at_length(self, length: int) -> "LanguageSpec":
        """The fixed-length slice at a given length (max-length families only)."""
        family = Family.FORBIDDEN if self.family is Family.MAX_LENGTH_FORBIDDEN else Family.FIXED_LENGTH
        return LanguageSpec(family, self.q, length, forbidden=self.forbidden)

    def contains(self, letters: Sequence[int]) -> bool:
        """Membership of the necklace class of ``letters`` (rotation invariant)."""
        letters = tuple(letters)
        if len(letters) not in self.lengths:
            return False
        if any(c < 1 or c > self.q for c in letters):
            return False
        if self.content is not None and not self.content.matches(letters):
            return False
        return self.forbidden_set.avoided_by(letters)

    def to_dict(self, encoding: str = LETTERS) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "q": self.q,
            "length": self.length,
            "content": list(self.content.counts) if self.content else None,
            "forbidden": self.forbidden.encode(encoding) if self.forbidden else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], encoding: str = LETTERS) -> "LanguageSpec":
        try:
            family = Family(data["family"])
            q = int(data["q"])
            length = int(data["length"])
        except (KeyError, ValueError) as e:
            raise InvalidInputError(f"malformed language document: {e}") from None
        content = ParikhVector(tuple(data["content"])) if data.get("content") else None
        forbidden = None
        if data.get("forbidden"):
            forbidden = ForbiddenSet.normalize(
                [parse_letters(f, q, encoding) for f in data["forbidden"]], q
            )
        return cls(family, q, length, content=content, forbidden=forbidden)

    def describe(self) -> str:
        parts = [f"{self.family.value} q={self.q} length={self.length}"]
        if self.content:
            parts.append(f"content={self.content.counts}")
        if self.forbidden:
            parts.append("forbidden=" + ",".join(self.forbidden.encode()))
        return " ".join(parts)


@dataclass(frozen=True)
class CentreSet:
    """
    Ordered centres chosen by a sampler, with the coverage length it certifies.
    """
    centres: Tuple[Word, ...]
    method: str
    lambda_achieved: int
    language: LanguageSpec
    k: int

    def __post_init__(self):
        object.__setattr__(self, "centres", tuple(self.centres))
        if self.k < 1:
            raise InvalidInputError(f"k must be >= 1, got {self.k}")
        if len(self.centres) > self.k:
            raise ConsistencyError(f"{len(self.centres)} centres exceed k={self.k}")
        for centre in self.centres:
            if not self.language.contains(centre.letters):
                raise ConsistencyError(f"centre {centre} is not in {self.language.describe()}")

    def __len__(self) -> int:
        return len(self.centres)

    def to_dict(self, encoding: str = LETTERS) -> Dict[str, Any]:
        return {
            "centres": [c.encode(encoding) for c in self.centres],
            "k": self.k,
            "lambda_achieved": self.lambda_achieved,
            "language": self.language.to_dict(encoding),
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], encoding: str = LETTERS,
                  language: Optional[LanguageSpec] = None) -> "CentreSet":
        language = language or LanguageSpec.from_dict(data["language"], encoding)
        centres = tuple(Word.parse(c, language.q, encoding) for c in data["centres"])
        return cls(
            centres=centres,
            method=str(data.get("method", "external")),
            lambda_achieved=int(data.get("lambda_achieved", 0)),
            language=language,
            k=int(data.get("k", len(centres))),
        )


@dataclass
class EvalReport:
    """
    Outcome of evaluating a centre set against its whole language.
    """
    language: LanguageSpec
    k: int
    method: str
    max_min_distance: Distance
    lambda_observed: int
    optimum: Optional[Distance] = None
    ratio: Optional[Distance] = None
    per_word_nearest: Optional[List[Tuple[Word, Word, Distance]]] = field(default=None, repr=False)

    @property
    def infeasible(self) -> bool:
        return self.max_min_distance.is_infinite

    def to_dict(self, encoding: str = LETTERS, decimal: bool = False) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "language": self.language.to_dict(encoding),
            "k": self.k,
            "method": self.method,
            "max_min_distance": self.max_min_distance.to_json(),
            "lambda_observed": self.lambda_observed,
            "optimum": self.optimum.to_json() if self.optimum is not None else None,
            "ratio": self.ratio.to_json() if self.ratio is not None else None,
            "infeasible": self.infeasible,
        }
        if decimal:
            doc["max_min_decimal"] = self.max_min_distance.decimal()
        if self.per_word_nearest is not None:
            doc["per_word_nearest"] = [
                {"word": w.encode(encoding), "centre": c.encode(encoding), "distance": d.to_json()}
                for w, c, d in self.per_word_nearest
            ]
        return doc

"""
Necklace Centres - Fixed-Content Ranking
Prefix counts, ranks and unranks for necklaces with a given Parikh vector.

Samplers depend only on the PrefixCounter protocol; the enumeration backend
below serves desk-scale contents and a polynomial ranking backend can be
dropped in behind the same interface.
"""

import logging
from bisect import bisect_left
from functools import lru_cache
from threading import Lock
from typing import List, Optional, Protocol, Sequence

from core.counting import count_fixed_content
from core.errors import ConsistencyError, InvalidInputError, ResourceLimitError
from core.models import Letters, ParikhVector, Word
from core.words import generate_necklaces, is_necklace

logger = logging.getLogger(__name__)


class PrefixCounter(Protocol):
    """Backend answering prefix and rank queries for one content vector."""

    content: ParikhVector

    def count(self) -> int: ...

    def count_with_prefix(self, prefix: Letters) -> int: ...

    def rank(self, letters: Letters) -> int: ...

    def unrank(self, r: int) -> Letters: ...


class EnumerationBackend:
    """
    Exact backend: generates every necklace of the content once, then answers
    queries by binary search over the sorted list.
    """

    def __init__(self, content: ParikhVector, cap: Optional[int] = None):
        self.content = content
        expected = count_fixed_content(content)
        if cap is not None and expected > cap:
            raise ResourceLimitError(
                f"fixed-content language {content.counts} has {expected} necklaces, cap is {cap}"
            )
        self._necklaces: List[Letters] = list(generate_necklaces(content.q, content.length, content))
        if len(self._necklaces) != expected:
            raise ConsistencyError(
                f"generated {len(self._necklaces)} necklaces for {content.counts}, expected {expected}"
            )
        logger.debug(f"Enumerated {expected} necklaces with content {content.counts}")

    def count(self) -> int:
        return len(self._necklaces)

    def count_with_prefix(self, prefix: Letters) -> int:
        prefix = tuple(prefix)
        if not self._fits(prefix):
            return 0
        lo = bisect_left(self._necklaces, prefix)
        # prefix + (q + 1,) sorts after every extension of prefix
        hi = bisect_left(self._necklaces, prefix + (self.content.q + 1,))
        return hi - lo

    def rank(self, letters: Letters) -> int:
        return bisect_left(self._necklaces, tuple(letters))

    def unrank(self, r: int) -> Letters:
        if not 0 <= r < len(self._necklaces):
            raise InvalidInputError(f"rank {r} outside 0..{len(self._necklaces) - 1}")
        return self._necklaces[r]

    def _fits(self, prefix: Letters) -> bool:
        used = [0] * self.content.q
        for c in prefix:
            if c < 1 or c > self.content.q:
                return False
            used[c - 1] += 1
        return all(u <= limit for u, limit in zip(used, self.content.counts))


@lru_cache(maxsize=64)
def _backend_for(content: ParikhVector) -> EnumerationBackend:
    return EnumerationBackend(content)


def count_fixed_content_with_prefix(prefix: Sequence[int], content: ParikhVector) -> int:
    """
    Necklaces with Parikh vector ``content`` whose canonical form starts with prefix.

    A prefix that over-uses a character yields 0.
    """
    if isinstance(prefix, Word):
        prefix = prefix.letters
    return _backend_for(content).count_with_prefix(tuple(prefix))


class FixedContentRanker:
    """NecklaceRanker over one content vector, backed by a PrefixCounter."""

    def __init__(self, content: ParikhVector, backend: Optional[PrefixCounter] = None):
        self.content = content
        self.q = content.q
        self.length = content.length
        self._backend = backend
        self._lock = Lock()

    @property
    def backend(self) -> PrefixCounter:
        with self._lock:
            if self._backend is None:
                self._backend = _backend_for(self.content)
            return self._backend

    def count(self) -> int:
        return self.backend.count()

    def contains(self, letters: Letters) -> bool:
        letters = tuple(letters)
        return self.content.matches(letters) and is_necklace(letters)

    def rank(self, letters: Letters) -> int:
        letters = tuple(letters)
        if len(letters) != self.length:
            raise InvalidInputError(f"boundary word has length {len(letters)}, expected {self.length}")
        return self.backend.rank(letters)

    def count_with_prefix(self, prefix: Letters) -> int:
        prefix = tuple(prefix)
        if not prefix:
            return self.count()
        return self.backend.count_with_prefix(prefix)

    def unrank(self, r: int) -> Letters:
        return self.backend.unrank(r)

"""
Necklace Centres - Error Types
One exception hierarchy shared by the library and the command line.
"""


class NecklaceError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1


class InvalidInputError(NecklaceError, ValueError):
    """Arguments violate an operation's preconditions."""

    exit_code = 2


class EmptyLanguageError(InvalidInputError):
    """A sampler was asked for centres of a language with no members."""


class ResourceLimitError(NecklaceError, RuntimeError):
    """A configured size cap (oracle, subset search, sequence budget) was exceeded."""

    exit_code = 3


class ConsistencyError(NecklaceError, ArithmeticError):
    """An internal cross-check failed (inexact division, rank/unrank mismatch)."""

    exit_code = 4

"""
Necklace Centres - Word Encodings
Text forms for words: letters 'a'..'z' or comma-separated integers.
"""

from typing import Sequence, Tuple

from .errors import InvalidInputError

LETTERS = "letters"
INTEGERS = "integers"
ENCODINGS = (LETTERS, INTEGERS)

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def parse_letters(text: str, q: int, encoding: str = LETTERS) -> Tuple[int, ...]:
    """
    Parse a word into character indices 1..q.

    Args:
        text: Encoded word.
        q: Alphabet size.
        encoding: ``letters`` or ``integers``.

    Returns:
        Tuple of character indices.
    """
    text = text.strip()
    if not text:
        raise InvalidInputError("empty word")

    if encoding == LETTERS:
        if q > len(_ALPHABET):
            raise InvalidInputError(f"letters encoding supports q <= 26, got q={q}")
        letters = []
        for ch in text:
            index = _ALPHABET.find(ch) + 1
            if index < 1 or index > q:
                raise InvalidInputError(f"letter {ch!r} in {text!r} is outside the alphabet of size {q}")
            letters.append(index)
        return tuple(letters)

    if encoding == INTEGERS:
        letters = []
        for part in text.split(","):
            try:
                index = int(part)
            except ValueError:
                raise InvalidInputError(f"{part!r} in {text!r} is not an integer") from None
            if index < 1 or index > q:
                raise InvalidInputError(f"letter {index} in {text!r} is outside the alphabet of size {q}")
            letters.append(index)
        return tuple(letters)

    raise InvalidInputError(f"unknown encoding {encoding!r}")


def format_letters(letters: Sequence[int], encoding: str = LETTERS) -> str:
    """Inverse of :func:`parse_letters`."""
    if encoding == INTEGERS or any(c > len(_ALPHABET) for c in letters):
        return ",".join(str(c) for c in letters)
    return "".join(_ALPHABET[c - 1] for c in letters)


def word_separator(encoding: str) -> str:
    """Separator between words in a list (forbidden sets, centre lists)."""
    # integer words already use commas internally
    return ";" if encoding == INTEGERS else ","


def parse_word_list(text: str, q: int, encoding: str = LETTERS) -> Tuple[Tuple[int, ...], ...]:
    """Parse a separated list of words, skipping blank entries."""
    parts = [p for p in text.split(word_separator(encoding)) if p.strip()]
    return tuple(parse_letters(p, q, encoding) for p in parts)

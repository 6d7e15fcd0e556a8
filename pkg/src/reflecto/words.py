"""Finite words over small integer alphabets.

Words are stored as ``bytes``: symbol ids are the byte values, storage is
0-based, and slicing/hashing/lexicographic comparison come for free.  Position
``i`` of a sequence in the usual 1-based convention is ``w[i - 1]``.
"""
from __future__ import annotations

from typing import Iterable

Word = bytes

DISPLAY = "0123456789abcdefghijklmnopqrstuvwxyz"
_DECODE = {c: i for i, c in enumerate(DISPLAY)}


class WordError(ValueError):
    pass


def word(text: str | Iterable[int]) -> Word:
    """Build a word from a display string (``"0110"``) or an iterable of ids."""
    if isinstance(text, str):
        try:
            return bytes(_DECODE[c] for c in text)
        except KeyError as exc:
            raise WordError(f"unknown display character {exc.args[0]!r}") from None
    return bytes(text)


def show(w: Word) -> str:
    try:
        return "".join(DISPLAY[s] for s in w)
    except IndexError:
        raise WordError("symbol id has no display character") from None


def reverse(w: Word) -> Word:
    return w[::-1]


def is_palindrome(w: Word) -> bool:
    return w == w[::-1]


def exchange(w: Word) -> Word:
    """The exchange morphism E on binary words (0 <-> 1)."""
    if any(s > 1 for s in w):
        raise WordError("exchange is only defined on binary words")
    return w.translate(_EXCHANGE)


_EXCHANGE = bytes([1, 0]) + bytes(range(2, 256))


def alphabet(w: Word) -> list[int]:
    return sorted(set(w))

"""Words over the generators x1..xr and their rotation orbits (necklaces).

A word is a tuple of 1-based generator indices.  The canonical representative
of a necklace is its lexicographically least rotation, and rotations are
listed by repeatedly moving the last letter to the front, which is how the
cyclic operator acts on a simplex made of letters only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

Word = tuple[int, ...]

MAX_WORD_LENGTH = 16


class WordParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"invalid word {text!r} at position {position}: {reason}")


def rotate(w: Sequence[int], k: int = 1) -> Word:
    """Move the last ``k`` letters to the front."""
    w = tuple(w)
    if not w:
        return w
    k %= len(w)
    return w[len(w) - k:] + w[: len(w) - k]


def word_period(w: Sequence[int]) -> int:
    w = tuple(w)
    for u in range(1, len(w) + 1):
        if len(w) % u == 0 and rotate(w, u) == w:
            return u
    return 1


@dataclass(frozen=True, order=True)
class CyclicalWord:
    """A rotation orbit of words, stored through its least rotation."""

    representative: Word
    period: int

    @property
    def length(self) -> int:
        return len(self.representative)

    def rotations(self) -> list[Word]:
        return [rotate(self.representative, u) for u in range(self.period)]

    def __str__(self) -> str:
        if not self.representative:
            return "[0]"
        return "[" + ",".join(f"x{i}" for i in self.representative) + "]"

    def spelled(self) -> str:
        return ",".join(str(i) for i in self.representative)


EMPTY_WORD = CyclicalWord((), 1)


def check_word(w: Sequence[int], r: int | None = None) -> Word:
    w = tuple(w)
    for pos, letter in enumerate(w):
        if not isinstance(letter, int) or letter < 1 or (r is not None and letter > r):
            bound = f"1..{r}" if r is not None else "positive"
            raise ValueError(f"letter {letter!r} at index {pos} out of range ({bound})")
    return w


def canonicalize(w: Sequence[int], r: int | None = None) -> CyclicalWord:
    """Return the necklace through ``w`` with its least rotation and period."""
    w = check_word(w, r)
    if not w:
        return EMPTY_WORD
    if len(w) > MAX_WORD_LENGTH:
        raise ValueError(f"words longer than {MAX_WORD_LENGTH} letters are not supported")
    return CyclicalWord(min(rotate(w, u) for u in range(len(w))), word_period(w))


def rotations(w: Sequence[int]) -> list[Word]:
    """The distinct rotations of ``w``, starting from the canonical representative."""
    if not w:
        raise ValueError("the empty word has no rotations")
    return canonicalize(w).rotations()


def enumerate_necklaces(r: int, m: int) -> list[CyclicalWord]:
    """All necklaces of length ``m`` over ``r`` letters, sorted by representative."""
    if r < 1:
        raise ValueError("alphabet size must be positive")
    if m < 0:
        raise ValueError("length must be non-negative")
    if m == 0:
        return [EMPTY_WORD]
    seen = {}
    for w in itertools.product(range(1, r + 1), repeat=m):
        c = canonicalize(w)
        seen[c.representative] = c
    return [seen[k] for k in sorted(seen)]


def necklace_count(r: int, m: int) -> int:
    """Number of necklaces by the totient formula."""
    if m == 0:
        return 1
    total = 0
    for d in range(1, m + 1):
        if m % d == 0:
            total += _totient(d) * r ** (m // d)
    return total // m


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def parse_word(text: str, r: int | None = None) -> Word:
    """Parse comma-separated 1-based indices, e.g. ``"1,2,1"``.

    The empty string denotes the empty word.
    """
    if text.strip() == "":
        return ()
    letters = []
    pos = 0
    for token in text.split(","):
        stripped = token.strip()
        start = pos + (len(token) - len(token.lstrip()))
        if not stripped.isdigit():
            raise WordParseError(text, start, f"expected a positive index, got {stripped!r}")
        value = int(stripped)
        if value < 1 or (r is not None and value > r):
            bound = f"1..{r}" if r is not None else "a positive index"
            raise WordParseError(text, start, f"letter {value} outside {bound}")
        letters.append(value)
        pos += len(token) + 1
    return tuple(letters)

"""Words in a free group of finite rank.

A word is a tuple of non-zero integers: ``i`` stands for the generator
``x_i`` and ``-i`` for its inverse. The text form writes generator ``i`` as the
``i``-th lowercase letter and its inverse in uppercase; ranks above 26 use the
escapes ``x27`` / ``X27``.
"""

from __future__ import annotations

import itertools
import string
from collections.abc import Iterable, Iterator

from .errors import WordParseError

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a sequence of signed generator indices."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a generator index")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Iterable[int]) -> Word:
    return tuple(-x for x in reversed(tuple(w)))


def multiply(*words: Iterable[int]) -> Word:
    return reduce_word(itertools.chain.from_iterable(words))


def conjugate(w: Word, g: Word) -> Word:
    """Return ``g^-1 w g``."""
    return multiply(inverse(g), w, g)


def is_reduced(w: Word) -> bool:
    return all(a != -b for a, b in zip(w, w[1:]))


def cyclic_reduce(w: Word) -> Word:
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def word_rank(w: Iterable[int]) -> int:
    """Largest generator index used (0 for the empty word)."""
    return max((abs(x) for x in w), default=0)


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse ``"abA"``-style text; ``""`` and ``"1"`` denote the identity."""
    s = text.strip()
    if s in ("", "1", "ε"):
        return EMPTY
    letters = []
    pos = 0
    while pos < len(s):
        ch = s[pos]
        if ch in "xX" and pos + 1 < len(s) and s[pos + 1].isdigit():
            end = pos + 1
            while end < len(s) and s[end].isdigit():
                end += 1
            idx = int(s[pos + 1:end])
            if idx == 0:
                raise WordParseError(text, pos, "generator index 0")
            letters.append(idx if ch == "x" else -idx)
            start, pos = pos, end
        elif ch in string.ascii_lowercase:
            letters.append(ord(ch) - ord("a") + 1)
            start, pos = pos, pos + 1
        elif ch in string.ascii_uppercase:
            letters.append(-(ord(ch) - ord("A") + 1))
            start, pos = pos, pos + 1
        else:
            raise WordParseError(text, pos)
        if rank is not None and abs(letters[-1]) > rank:
            raise WordParseError(text, start, f"generator {abs(letters[-1])} exceeds rank {rank}")
    return reduce_word(letters)


def format_word(w: Iterable[int]) -> str:
    parts = []
    for x in w:
        i = abs(x)
        if i <= 26:
            ch = chr(ord("a") + i - 1)
            parts.append(ch if x > 0 else ch.upper())
        else:
            parts.append(f"x{i}" if x > 0 else f"X{i}")
    return "".join(parts)


def parse_subgroup(text: str, rank: int | None = None) -> list[Word]:
    """Comma-separated generator list, e.g. ``"ab,AAb"``. Trivial words are dropped."""
    words = []
    offset = 0
    for chunk in text.split(","):
        try:
            w = parse_word(chunk, rank)
        except WordParseError as exc:
            raise WordParseError(text, offset + exc.position, str(exc).split(" at position")[0]) from None
        if w:
            words.append(w)
        offset += len(chunk) + 1
    return words


def format_subgroup(words: Iterable[Word]) -> str:
    return ",".join(format_word(w) for w in words)


def reduced_words(rank: int, max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All reduced words of length ``min_length..max_length``, shortlex order."""
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    level: list[Word] = [EMPTY]
    for length in range(max_length + 1):
        if length >= min_length:
            yield from level
        level = [w + (x,) for w in level for x in letters if not w or w[-1] != -x]

"""Free-group words.

A word is a tuple of syllables ``(index, exponent)`` with nonzero exponents
and no two adjacent syllables on the same index; this is the freely reduced
form, so two words are equal in the free group iff the tuples are equal.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ParseError

Word = tuple  # tuple[tuple[int, int], ...]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z_0-9']*)(?:\^(-?\d+))?$")


def reduce_syllables(syllables: Iterable[tuple[int, int]]) -> Word:
    out: list[list[int]] = []
    for i, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == i:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([i, e])
    return tuple((i, e) for i, e in out)


def from_letters(letters: Iterable[int]) -> Word:
    """Letters are ``+(i+1)`` for generator ``i`` and ``-(i+1)`` for its inverse."""
    return reduce_syllables((abs(c) - 1, 1 if c > 0 else -1) for c in letters)


def to_letters(word: Word) -> list[int]:
    out = []
    for i, e in word:
        c = i + 1 if e > 0 else -(i + 1)
        out.extend([c] * abs(e))
    return out


def inverse(word: Word) -> Word:
    return tuple((i, -e) for i, e in reversed(word))


def concat(*words: Word) -> Word:
    return reduce_syllables(s for w in words for s in w)


def power(word: Word, n: int) -> Word:
    if n < 0:
        word, n = inverse(word), -n
    return concat(*([word] * n))


def commutator(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``."""
    return concat(u, v, inverse(u), inverse(v))


def conj(u: Word, t: Word) -> Word:
    """``u^t = t^-1 u t``."""
    return concat(inverse(t), u, t)


def length(word: Word) -> int:
    return sum(abs(e) for _, e in word)


def shift_indices(word: Word, offset: int) -> Word:
    return tuple((i + offset, e) for i, e in word)


def parse_word(text: str, names: Sequence[str], aliases: dict | None = None) -> Word:
    """Parse ``"b a b^-1"`` (tokens separated by spaces, dots or ``*``); ``1`` is empty."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    index = {n: i for i, n in enumerate(names)}
    if aliases:
        for k, v in aliases.items():
            index.setdefault(k, index[v])
    syl = []
    for tok in re.split(r"[\s.*]+", text):
        if not tok:
            continue
        m = _TOKEN.match(tok)
        if not m or m.group(1) not in index:
            raise ParseError(f"bad word token {tok!r} (letters: {', '.join(names)})")
        syl.append((index[m.group(1)], int(m.group(2)) if m.group(2) else 1))
    return reduce_syllables(syl)


def format_word(word: Word, names: Sequence[str], sep: str = " ") -> str:
    if not word:
        return "1"
    return sep.join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in word)


@lru_cache(maxsize=None)
def _sphere(k: int, n: int) -> tuple:
    """Freely reduced letter sequences of length ``n`` over ``k`` generators, lex order."""
    letters = [c for i in range(k) for c in (i + 1, -(i + 1))]
    if n == 0:
        return ((),)
    out = []
    for w in _sphere(k, n - 1):
        for c in letters:
            if w and w[-1] == -c:
                continue
            out.append(w + (c,))
    return tuple(out)


class ReducedWords:
    """Indexable length-lex enumeration of all reduced words over ``k`` letters."""

    def __init__(self, k: int):
        self.k = k
        self._items: list[Word] = []
        self._len = -1

    def __getitem__(self, i: int) -> Word:
        while len(self._items) <= i:
            self._len += 1
            if self.k == 0 and self._len > 0:
                raise IndexError(i)
            self._items.extend(from_letters(w) for w in _sphere(self.k, self._len))
        return self._items[i]


@lru_cache(maxsize=None)
def reduced_words(k: int) -> ReducedWords:
    return ReducedWords(k)

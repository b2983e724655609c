"""The contract every computable group family implements."""
from __future__ import annotations

from typing import Any, Hashable, Optional, Sequence

from ..errors import FamilyMismatch, InputError
from ..words import Word, format_word, parse_word

Element = Hashable


class ComputableGroup:
    """A group with a decidable word problem via canonical normal forms.

    Subclasses supply ``identity``, ``_mul``, ``_inv``, ``generators``,
    ``_owns`` and the text codec for elements.  Equality of normal forms is
    the word problem.  Instances are immutable apart from memo caches.
    """

    tag: str = "?"
    gen_names: tuple = ()
    aliases: dict = {}
    infinite = True

    # -- family-specific hooks -------------------------------------------
    def identity(self) -> Element:
        raise NotImplementedError

    def generators(self) -> tuple:
        raise NotImplementedError

    def _owns(self, g: Any) -> bool:
        raise NotImplementedError

    def _mul(self, g, h):
        raise NotImplementedError

    def _inv(self, g):
        raise NotImplementedError

    def spec_text(self) -> str:
        raise NotImplementedError

    def format_element(self, g) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    # -- contract ---------------------------------------------------------
    def check(self, *gs) -> None:
        for g in gs:
            if not self._owns(g):
                raise FamilyMismatch(f"{g!r} is not an element of {self.spec_text()}")

    def mul(self, g, h):
        self.check(g, h)
        return self._mul(g, h)

    def inv(self, g):
        self.check(g)
        return self._inv(g)

    def equal(self, g, h) -> bool:
        self.check(g, h)
        return g == h

    def is_identity(self, g) -> bool:
        return self.equal(g, self.identity())

    def power(self, g, n: int):
        if n < 0:
            g, n = self._inv(g), -n
        result = self.identity()
        while n:
            if n & 1:
                result = self._mul(result, g)
            n >>= 1
            if n:
                g = self._mul(g, g)
        return result

    def commutator(self, g, h):
        """``g h g^-1 h^-1``."""
        return self._mul(self._mul(g, h), self._inv(self._mul(h, g)))

    def conj(self, g, t):
        """``g^t = t^-1 g t``."""
        return self._mul(self._mul(self._inv(t), g), t)

    def evaluate_word(self, word: Word, tup: Sequence) -> Element:
        result = self.identity()
        for i, e in word:
            if not 0 <= i < len(tup):
                raise InputError(f"letter index {i} outside a tuple of length {len(tup)}")
            result = self._mul(result, self.power(tup[i], e))
        return result

    def relator(self, word: Word) -> bool:
        """The relator set R: is ``word`` trivial on the designated generators?"""
        return self.evaluate_word(word, self.generators()) == self.identity()

    def word(self, text: str) -> Word:
        return parse_word(text, self.gen_names, self.aliases)

    def element(self, text: str) -> Element:
        """An element given either as a word in the generators or in canonical text."""
        try:
            return self.evaluate_word(self.word(text), self.generators())
        except InputError:
            return self.parse_element(text)

    def format_word(self, word: Word) -> str:
        return format_word(word, self.gen_names)

    def order(self) -> Optional[int]:
        """Group order, ``None`` when infinite."""
        return None

    def element_order(self, g) -> Optional[int]:
        raise NotImplementedError

    # -- enumeration --------------------------------------------------------
    def enumerate(self, count: int) -> list:
        """First ``count`` elements in length-lex order of their shortest words.

        Breadth-first over the designated generators and their inverses; the
        identity comes first and ``enumerate(n)`` is a prefix of
        ``enumerate(n + 1)``.
        """
        if count < 0:
            raise InputError("count must be nonnegative")
        cache = self.__dict__.setdefault("_enum_cache", {"list": [], "seen": set(), "frontier": None})
        items, seen = cache["list"], cache["seen"]
        if not items:
            e = self.identity()
            items.append(e)
            seen.add(e)
            cache["frontier"] = [e]
        gens = self.generators()
        steps = [g for x in gens for g in (x, self._inv(x))]
        while len(items) < count and cache["frontier"]:
            nxt = []
            for g in cache["frontier"]:
                for s in steps:
                    h = self._mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        items.append(h)
                        nxt.append(h)
            cache["frontier"] = nxt
        return items[:count]

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_text()}>"

    def __eq__(self, other):
        return type(self) is type(other) and self.spec_text() == other.spec_text()

    def __hash__(self):
        return hash((type(self).__name__, self.spec_text()))

"""The solvable Baumslag-Solitar group BS(1,n) = Z[1/n] x| Z."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError, ParseError
from .base import ComputableGroup
from .wreath import _denominator_ok


@dataclass(frozen=True)
class BSElt:
    q: Fraction
    k: int


class BS1n(ComputableGroup):
    """``<a, b | b a b^-1 = a^n>``; ``a = (1, 0)``, ``b = (0, 1)`` (``t`` is an alias of ``b``).

    ``(q, k)(q', k') = (q + n^k q', k + k')``.
    """

    tag = "bs1n"
    gen_names = ("a", "b")
    aliases = {"t": "b"}

    def __init__(self, n: int):
        if n < 2:
            raise InputError("BS(1,n) needs n >= 2")
        self.n = n

    def identity(self):
        return BSElt(Fraction(0), 0)

    def make(self, q, k) -> BSElt:
        g = BSElt(Fraction(q), int(k))
        self.check(g)
        return g

    def generators(self):
        return (BSElt(Fraction(1), 0), BSElt(Fraction(0), 1))

    def _owns(self, g):
        return isinstance(g, BSElt) and _denominator_ok(g.q.denominator, self.n)

    def _scale(self, k):
        return self.n**k if k >= 0 else Fraction(1, self.n ** (-k))

    def _mul(self, g, h):
        return BSElt(g.q + self._scale(g.k) * h.q, g.k + h.k)

    def _inv(self, g):
        return BSElt(-g.q * self._scale(-g.k), -g.k)

    def power(self, g, e):
        if g.k == 0:
            return BSElt(g.q * e, 0)
        return super().power(g, e)

    def element_order(self, g):
        self.check(g)
        return 1 if (g.q == 0 and g.k == 0) else None

    def in_base(self, g) -> bool:
        return g.k == 0

    def spec_text(self):
        return f"bs1n {self.n}"

    def format_element(self, g):
        self.check(g)
        return f"bs1n q={g.q} k={g.k}"

    def parse_element(self, text):
        m = re.fullmatch(r"\s*bs1n\s+q=(-?\d+(?:/\d+)?)\s+k=(-?\d+)\s*", text)
        if not m:
            raise ParseError(f"not a bs1n element: {text!r}")
        try:
            return self.make(Fraction(m.group(1)), int(m.group(2)))
        except Exception as exc:
            raise ParseError(str(exc)) from exc

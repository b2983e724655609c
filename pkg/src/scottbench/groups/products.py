"""N x Z, the target of the 'introduce a new commuting element' branch."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError
from .base import ComputableGroup


@dataclass(frozen=True)
class PZElt:
    g: object
    e: int


class ProductZ(ComputableGroup):
    """``base x Z``; the extra generator ``c`` is central of infinite order."""

    tag = "prodz"

    def __init__(self, base: ComputableGroup):
        self.base = base
        self.gen_names = tuple(base.gen_names) + ("c",)
        self.aliases = dict(base.aliases)

    def identity(self):
        return PZElt(self.base.identity(), 0)

    def generators(self):
        return tuple(PZElt(g, 0) for g in self.base.generators()) + (PZElt(self.base.identity(), 1),)

    def include(self, g):
        return PZElt(g, 0)

    def _owns(self, g):
        return isinstance(g, PZElt) and isinstance(g.e, int) and self.base._owns(g.g)

    def _mul(self, g, h):
        return PZElt(self.base._mul(g.g, h.g), g.e + h.e)

    def _inv(self, g):
        return PZElt(self.base._inv(g.g), -g.e)

    def power(self, g, n):
        return PZElt(self.base.power(g.g, n), g.e * n)

    def element_order(self, g):
        self.check(g)
        return self.base.element_order(g.g) if g.e == 0 else None

    def spec_text(self):
        return f"prodz {self.base.spec_text()}"

    def format_element(self, g):
        self.check(g)
        return f"pz c={g.e} {self.base.format_element(g.g)}"

    def parse_element(self, text):
        parts = text.split(None, 2)
        if len(parts) < 3 or parts[0] != "pz" or not parts[1].startswith("c="):
            raise ParseError(f"not a pz element: {text!r}")
        return PZElt(self.base.parse_element(parts[2]), int(parts[1][2:]))

"""Finitely generated abelian groups Z^n + Z/o_1 + ... + Z/o_r."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm, prod
from typing import Optional

from ..errors import InputError, ParseError
from .base import ComputableGroup


@dataclass(frozen=True)
class AbElt:
    free: tuple
    tors: tuple


def _names(prefix: str, k: int) -> list:
    return [prefix] if k == 1 else [f"{prefix}{i + 1}" for i in range(k)]


class FgAbelian(ComputableGroup):
    """Written multiplicatively at the interface, additive inside.

    Designated generators: the free basis ``x1..xn`` then one generator
    ``y1..yr`` per torsion order.
    """

    tag = "fgabelian"

    def __init__(self, n: int, orders=()):
        orders = tuple(int(o) for o in orders)
        if n < 0 or any(o < 2 for o in orders):
            raise InputError("free rank must be >= 0 and torsion orders >= 2")
        self.n = n
        self.orders = orders
        self.gen_names = tuple(_names("x", n) + _names("y", len(orders)))
        self.infinite = n > 0

    def identity(self):
        return AbElt((0,) * self.n, (0,) * len(self.orders))

    def make(self, free=(), tors=()):
        free = tuple(free) or (0,) * self.n
        tors = tuple(t % o for t, o in zip(tors, self.orders)) if tors else (0,) * len(self.orders)
        return AbElt(free, tors)

    def generators(self):
        gens = []
        for i in range(self.n):
            gens.append(AbElt(tuple(int(i == j) for j in range(self.n)), (0,) * len(self.orders)))
        for i, o in enumerate(self.orders):
            gens.append(AbElt((0,) * self.n, tuple(int(i == j) for j in range(len(self.orders)))))
        return tuple(gens)

    def _owns(self, g):
        return isinstance(g, AbElt) and len(g.free) == self.n and len(g.tors) == len(self.orders)

    def _mul(self, g, h):
        return AbElt(
            tuple(a + b for a, b in zip(g.free, h.free)),
            tuple((a + b) % o for a, b, o in zip(g.tors, h.tors, self.orders)),
        )

    def _inv(self, g):
        return AbElt(tuple(-a for a in g.free), tuple((-a) % o for a, o in zip(g.tors, self.orders)))

    def power(self, g, n):
        return AbElt(tuple(a * n for a in g.free), tuple((a * n) % o for a, o in zip(g.tors, self.orders)))

    def order(self) -> Optional[int]:
        return None if self.n else prod(self.orders)

    def element_order(self, g) -> Optional[int]:
        self.check(g)
        if any(g.free):
            return None
        return lcm(1, *(o // gcd(t, o) for t, o in zip(g.tors, self.orders)))

    def coords(self, g) -> tuple:
        return g.free + g.tors

    def torsion_elements(self) -> list:
        """All torsion elements, in enumeration order of the torsion subgroup."""
        return FgAbelian(0, self.orders).enumerate(prod(self.orders))

    def embed_torsion(self, t):
        return AbElt((0,) * self.n, t.tors)

    def spec_text(self):
        return " ".join(["fgabelian", str(self.n), *map(str, self.orders)])

    def format_element(self, g):
        self.check(g)
        s = "fgab free=" + ",".join(map(str, g.free))
        if self.orders:
            s += " tors=" + ",".join(map(str, g.tors))
        return s

    def parse_element(self, text):
        parts = dict(p.split("=", 1) for p in text.split()[1:] if "=" in p)
        if not text.startswith("fgab"):
            raise ParseError(f"not an fgab element: {text!r}")
        free = tuple(int(v) for v in parts.get("free", "").split(",") if v != "")
        tors = tuple(int(v) for v in parts.get("tors", "").split(",") if v != "")
        if len(free) != self.n or len(tors) != len(self.orders):
            raise ParseError(f"element {text!r} does not fit {self.spec_text()}")
        return self.make(free, tors)


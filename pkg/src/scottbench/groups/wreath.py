"""Wreath-type semidirect products A^(H) x| H with A in {Z/d, Z, Z[1/n]}.

Elements are ``(f, s)`` with ``f`` a finitely supported map from positions to
the fiber and ``s`` the shift.  The product is ``(f, s)(g, u) = (f + s.g, s+u)``
where ``s`` translates positions.  For the BS-type target (B^Z) x| Z^2 the
first shift coordinate instead multiplies every fiber value by n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from ..errors import InputError, ParseError
from .base import ComputableGroup


@dataclass(frozen=True)
class WrElt:
    base: tuple  # ((position tuple, value), ...) sorted by position, values nonzero
    shift: tuple


class WreathGroup(ComputableGroup):
    fiber = "Z"  # "mod", "Z" or "Zn"
    modulus = 0
    scale = 0  # n for the multiply-by-n action on the first shift coordinate
    rank = 1

    def __init__(self):
        self.pos_dim = self.rank - (1 if self.scale else 0)
        self.infinite = True

    # fiber arithmetic
    def _norm(self, v):
        if self.fiber == "mod":
            return v % self.modulus
        return v

    def identity(self):
        return WrElt((), (0,) * self.rank)

    def make(self, base: dict, shift) -> WrElt:
        items = []
        for pos, v in base.items():
            pos = (pos,) if isinstance(pos, int) else tuple(pos)
            v = self._norm(Fraction(v) if self.fiber == "Zn" else v)
            if v:
                items.append((pos, v))
        shift = (shift,) if isinstance(shift, int) else tuple(shift)
        return WrElt(tuple(sorted(items)), shift)

    def generators(self):
        gens = [self.make({(0,) * self.pos_dim: 1}, (0,) * self.rank)]
        for i in range(self.rank):
            gens.append(WrElt((), tuple(int(i == j) for j in range(self.rank))))
        return tuple(gens)

    def _owns(self, g):
        return (
            isinstance(g, WrElt)
            and len(g.shift) == self.rank
            and all(len(p) == self.pos_dim for p, _ in g.base)
            and all(self._value_ok(v) for _, v in g.base)
        )

    def _value_ok(self, v):
        if self.fiber == "mod":
            return isinstance(v, int) and 0 < v < self.modulus
        if self.fiber == "Z":
            return isinstance(v, int)
        return isinstance(v, (int, Fraction)) and _denominator_ok(Fraction(v).denominator, self.scale)

    def _act(self, shift, base):
        """Translate (and scale) a base map by ``shift``."""
        if self.scale:
            factor = Fraction(self.scale) ** shift[0]
            move = shift[1:]
        else:
            factor = 1
            move = shift
        out = []
        for pos, v in base:
            out.append((tuple(a + b for a, b in zip(pos, move)), v * factor if factor != 1 else v))
        return out

    def _combine(self, f, extra):
        d = dict(f)
        for pos, v in extra:
            nv = self._norm(d.get(pos, 0) + v)
            if nv:
                d[pos] = nv
            else:
                d.pop(pos, None)
        return tuple(sorted(d.items()))

    def _mul(self, g, h):
        if not h.base:
            base = g.base
        else:
            base = self._combine(g.base, self._act(g.shift, h.base))
        return WrElt(base, tuple(a + b for a, b in zip(g.shift, h.shift)))

    def _inv(self, g):
        neg = tuple(-a for a in g.shift)
        base = self._combine((), [(p, -v) for p, v in self._act(neg, g.base)])
        return WrElt(base, neg)

    def power(self, g, n):
        if not g.base:
            return WrElt((), tuple(a * n for a in g.shift))
        if not any(g.shift):
            items = tuple((p, self._norm(v * n)) for p, v in g.base)
            return WrElt(tuple(it for it in items if it[1]), g.shift)
        return super().power(g, n)

    def element_order(self, g):
        self.check(g)
        if any(g.shift):
            return None
        if not g.base:
            return 1
        if self.fiber == "mod":
            return lcm(*(self.modulus // gcd(v, self.modulus) for _, v in g.base))
        return None

    def in_base(self, g) -> bool:
        return not any(g.shift)

    # text
    def format_element(self, g):
        self.check(g)
        f = ",".join("_".join(map(str, p)) + ":" + str(v) for p, v in g.base)
        return f"wr f={f} k={','.join(map(str, g.shift))}"

    def parse_element(self, text):
        parts = text.split()
        if not parts or parts[0] != "wr":
            raise ParseError(f"not a wreath element: {text!r}")
        kv = dict(p.split("=", 1) for p in parts[1:])
        try:
            base = {}
            for item in filter(None, kv.get("f", "").split(",")):
                pos, val = item.split(":")
                base[tuple(int(x) for x in pos.split("_"))] = Fraction(val) if self.fiber == "Zn" else int(val)
            shift = tuple(int(x) for x in kv["k"].split(","))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad wreath element {text!r}") from exc
        g = self.make(base, shift)
        self.check(g)
        return g


def _denominator_ok(den: int, n: int) -> bool:
    while den > 1:
        g = gcd(den, n)
        if g == 1:
            return False
        den //= g
    return True


class LamplighterD(WreathGroup):
    """L_d = (Z/d) wr Z, generators ``a`` (lamp at 0) and ``t`` (shift)."""

    tag = "lamplighter"
    fiber = "mod"
    gen_names = ("a", "t")

    def __init__(self, d: int):
        if d < 2:
            raise InputError("lamplighter needs d >= 2")
        self.modulus = self.d = d
        super().__init__()

    def spec_text(self):
        return f"lamplighter {self.d}"


class ZWrZ(WreathGroup):
    tag = "zwrz"
    gen_names = ("a", "t")

    def spec_text(self):
        return "zwrz"


class ZdWrZ2(WreathGroup):
    """(Z/d) wr Z^2; generators ``a``, ``t``, ``s``."""

    tag = "zdwrz2"
    fiber = "mod"
    rank = 2
    gen_names = ("a", "t", "s")

    def __init__(self, d: int):
        if d < 2:
            raise InputError("d >= 2 required")
        self.modulus = self.d = d
        super().__init__()

    def spec_text(self):
        return f"zdwrz2 {self.d}"


class ZWrZ2(WreathGroup):
    tag = "zwrz2"
    rank = 2
    gen_names = ("a", "t", "s")

    def spec_text(self):
        return "zwrz2"


class BS1nWr(WreathGroup):
    """(B^Z) x| Z^2 with B = Z[1/n]: first coordinate multiplies by n, second shifts."""

    tag = "bs1nwr"
    fiber = "Zn"
    rank = 2
    gen_names = ("a", "b", "s")
    aliases = {"t": "b"}

    def __init__(self, n: int):
        if n < 2:
            raise InputError("n >= 2 required")
        self.scale = self.n = n
        super().__init__()

    def spec_text(self):
        return f"bs1nwr {self.n}"

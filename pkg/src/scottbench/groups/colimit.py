"""Endomorphisms and the direct limit G -> G -> G -> ... along one of them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..errors import InputError, ParseError
from ..words import reduced_words
from .abelian import AbElt, FgAbelian
from .base import ComputableGroup
from .bs import BS1n, BSElt
from .homs import apply_hom
from .nilpotent import FreeNilpotent, NilElt
from .wreath import LamplighterD, WrElt, ZWrZ


class Endo:
    """An endomorphism given by generator images (words in the generators).

    ``preimage`` decides membership in the image and returns the unique
    preimage (the map is injective); it is what lets the direct limit keep
    minimal-stage representatives.
    """

    def __init__(self, source: ComputableGroup, images: tuple, preimage: Optional[Callable] = None, name: str = "custom"):
        self.source = source
        self.images = tuple(images)
        self._images = tuple(source.evaluate_word(w, source.generators()) for w in self.images)
        self._preimage = preimage
        self.name = name
        self.certified_length = 0

    def __call__(self, g):
        return apply_hom(self.source, g, self._images, self.source)

    def iterate(self, g, times: int):
        for _ in range(times):
            g = self(g)
        return g

    def preimage(self, g):
        if self._preimage is None:
            return None
        return self._preimage(g)

    def validate(self, max_length: int = 6) -> "Endo":
        """Check homomorphism on sampled relators, injectivity and properness on short words."""
        G = self.source
        gens = G.generators()
        words = reduced_words(len(gens))
        i = 0
        while True:
            w = words[i]
            if len(w) and sum(abs(e) for _, e in w) > max_length:
                break
            value = G.evaluate_word(w, gens)
            image = G.evaluate_word(w, self._images)
            if (value == G.identity()) != (image == G.identity()):
                kind = "not a homomorphism" if value == G.identity() else "not injective"
                raise InputError(f"endomorphism {self.name} is {kind} (word {G.format_word(w)})")
            if value != G.identity() and self._preimage is not None and self.preimage(image) != value:
                raise InputError(f"preimage rule of {self.name} disagrees on {G.format_word(w)}")
            i += 1
        if self._preimage is not None and all(self.preimage(x) is not None for x in gens):
            raise InputError(f"endomorphism {self.name} hits every generator; not proper")
        self.certified_length = max_length
        return self


def default_endo(G: ComputableGroup) -> Endo:
    """The proper injective endomorphisms used by the reductions."""
    if isinstance(G, FreeNilpotent):
        return dilation(G, 2)
    if isinstance(G, FgAbelian):
        if G.n == 0:
            raise InputError("finite abelian groups are co-Hopfian")
        imgs = tuple(((i, 2),) if i < G.n else ((i, 1),) for i in range(len(G.gen_names)))

        def pre(g: AbElt):
            if any(a % 2 for a in g.free):
                return None
            return AbElt(tuple(a // 2 for a in g.free), g.tors)

        return Endo(G, imgs, pre, "double-free-part")
    if isinstance(G, (LamplighterD, ZWrZ)):

        def pre(g: WrElt):
            if any(s % 2 for s in g.shift) or any(p[0] % 2 for p, _ in g.base):
                return None
            return WrElt(tuple(((p[0] // 2,), v) for p, v in g.base), tuple(s // 2 for s in g.shift))

        return Endo(G, (((0, 1),), ((1, 2),)), pre, "t-squared")
    if isinstance(G, BS1n):
        p = smallest_prime_not_dividing(G.n)

        def pre(g: BSElt):
            q = g.q / p
            return BSElt(q, g.k) if G._owns(BSElt(q, g.k)) else None

        return Endo(G, (((0, p),), ((1, 1),)), pre, f"a-to-a^{p}")
    raise InputError(f"no default endomorphism for {G.spec_text()}")


def smallest_prime_not_dividing(n: int) -> int:
    p = 2
    while n % p == 0 or any(p % q == 0 for q in range(2, p)):
        p += 1
    return p


def dilation(G: FreeNilpotent, c: int) -> Endo:
    """``x_i -> x_i^c``; acts as multiplication by c^w on the weight-w layer."""

    def pre(g: NilElt):
        P = G.p
        acc = G.identity()
        rest = g
        for wt in range(1, P + 1):
            layer = [(w, e) for w, e in rest.coords if len(w) == wt]
            scale = c**wt
            if any(e % scale for _, e in layer):
                return None
            u = NilElt(tuple((w, e // scale) for w, e in layer))
            acc = G._mul(acc, u)
            rest = G._mul(G._inv(endo(u)), rest)
        return acc if not rest.coords else None

    if G.m is None:
        raise InputError("dilation needs a finite rank")
    endo = Endo(G, tuple(((i, c),) for i in range(G.m)), pre, f"dilation-{c}")
    return endo


@dataclass(frozen=True)
class ColElt:
    stage: int
    carrier: object


class Colimit(ComputableGroup):
    """Direct limit of ``G -phi-> G -phi-> ...``; ``(i, g) ~ (j, h)`` iff ``phi^(j-i)(g) = h``."""

    tag = "colimit"

    def __init__(self, endo: Endo):
        self.endo = endo
        self.base = endo.source
        self.gen_names = tuple(self.base.gen_names)
        self.aliases = dict(self.base.aliases)

    def canonical(self, stage: int, g) -> ColElt:
        while stage > 0:
            pre = self.endo.preimage(g)
            if pre is None:
                break
            stage, g = stage - 1, pre
        return ColElt(stage, g)

    def lift(self, x: ColElt, stage: int):
        return self.endo.iterate(x.carrier, stage - x.stage)

    def identity(self):
        return ColElt(0, self.base.identity())

    def generators(self):
        return tuple(ColElt(0, g) for g in self.base.generators())

    def _owns(self, g):
        return isinstance(g, ColElt) and g.stage >= 0 and self.base._owns(g.carrier)

    def _mul(self, x, y):
        s = max(x.stage, y.stage)
        return self.canonical(s, self.base._mul(self.lift(x, s), self.lift(y, s)))

    def _inv(self, x):
        return ColElt(x.stage, self.base._inv(x.carrier))

    def equal(self, x, y):
        self.check(x, y)
        s = max(x.stage, y.stage)
        return self.lift(x, s) == self.lift(y, s)

    def element_order(self, x):
        return self.base.element_order(x.carrier)

    def enumerate(self, count):
        """Cantor-diagonal over (stage, base element); deterministic, repetition free."""
        if count < 0:
            raise InputError("count must be nonnegative")
        out, seen = [], set()
        r = 0
        while len(out) < count:
            base = self.base.enumerate(r + 1)
            for i in range(r + 1):
                j = r - i
                if j < len(base):
                    x = self.canonical(i, base[j])
                    if x not in seen:
                        seen.add(x)
                        out.append(x)
                        if len(out) == count:
                            break
            r += 1
        return out

    def spec_text(self):
        return f"colimit {self.endo.name} {self.base.spec_text()}"

    def format_element(self, x):
        self.check(x)
        return f"colim i={x.stage} {self.base.format_element(x.carrier)}"

    def parse_element(self, text):
        parts = text.split(None, 2)
        if len(parts) < 3 or parts[0] != "colim" or not parts[1].startswith("i="):
            raise ParseError(f"not a colimit element: {text!r}")
        return self.canonical(int(parts[1][2:]), self.base.parse_element(parts[2]))

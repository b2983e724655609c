"""Free nilpotent groups N_{p,m} = F(m) / F(m)_{p+1}.

Normal form: exponent vector over the basic commutators attached to Lyndon
words of length <= p (a Hall set), ordered by weight then lexicographically.
The basic commutator of a Lyndon word with standard factorisation ``uv`` is
the group commutator ``[c_u, c_v] = c_u c_v c_u^-1 c_v^-1``.

Products are computed in the truncated Magnus algebra Z<X_1..X_m>/(deg > p),
where x_i -> 1 + X_i is faithful on N_{p,m}.  Coordinates are read back off
weight by weight: the lowest homogeneous component of what is left is a Lie
polynomial, and its lexicographically smallest monomial is the Lyndon word
of a basis element with coefficient 1, so peeling is triangular.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from ..errors import InputError, ParseError, UnsupportedError
from .base import ComputableGroup

MAX_CLASS = 3
MAX_RANK = 4


@dataclass(frozen=True)
class NilElt:
    coords: tuple  # ((lyndon word, exponent), ...) in basis order, exponents nonzero


def is_lyndon(w: tuple) -> bool:
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorisation")


def lyndon_words(m: int, p: int) -> list:
    out = []
    for n in range(1, p + 1):
        out.extend(_lyndon_of_length(m, n))
    return out


@lru_cache(maxsize=None)
def _lyndon_of_length(m: int, n: int) -> tuple:
    from itertools import product

    return tuple(w for w in product(range(m), repeat=n) if is_lyndon(w))


def basis_key(w: tuple):
    return (len(w), w)


# -- truncated Magnus algebra --------------------------------------------------
# A polynomial is a dict monomial-tuple -> nonzero int.


def poly_mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    bl = sorted(b.items(), key=lambda kv: len(kv[0]))
    for ma, ca in a.items():
        room = p - len(ma)
        for mb, cb in bl:
            if len(mb) > room:
                break
            m = ma + mb
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _binom(e: int, k: int) -> int:
    num = 1
    for j in range(k):
        num *= e - j
    den = 1
    for j in range(2, k + 1):
        den *= j
    return num // den


def poly_pow(a: dict, e: int, p: int) -> dict:
    """``a**e`` for ``a = 1 + u`` with ``u`` nilpotent; ``e`` may be negative."""
    u = {m: c for m, c in a.items() if m}
    out = {(): 1}
    term = {(): 1}
    for k in range(1, p + 1):
        term = poly_mul(term, u, p)
        if not term:
            break
        coef = _binom(e, k)
        if coef:
            for m, c in term.items():
                v = out.get(m, 0) + coef * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


class FreeNilpotent(ComputableGroup):
    """N_{p,m}; ``m=None`` gives the infinitely generated N_{p,inf}."""

    tag = "freenil"

    def __init__(self, p: int, m: Optional[int], *, unbounded: bool = False):
        if p < 1 or (m is not None and m < 1):
            raise InputError("class and rank must be >= 1")
        if not unbounded and (p > MAX_CLASS or m is None or m > MAX_RANK):
            raise UnsupportedError(f"free nilpotent groups supported for class <= {MAX_CLASS}, rank <= {MAX_RANK}")
        self.p, self.m = p, m
        if m is None:
            self.gen_names = ()
        elif m == 1:
            self.gen_names = ("x",)
        elif m == 2:
            self.gen_names = ("x", "y")
        else:
            self.gen_names = tuple(f"x{i + 1}" for i in range(m))
        self._magnus_cache: dict = {}
        self.infinite = True

    # -- basis -----------------------------------------------------------
    def basis(self) -> list:
        if self.m is None:
            raise UnsupportedError("N_{p,inf} has no finite basis list")
        return lyndon_words(self.m, self.p)

    def basis_element(self, w: tuple) -> NilElt:
        if not is_lyndon(w) or len(w) > self.p:
            raise InputError(f"{w} is not a basis word")
        return NilElt(((tuple(w), 1),))

    def gen(self, i: int) -> NilElt:
        return NilElt((((i,), 1),))

    def generators(self):
        if self.m is None:
            raise UnsupportedError("N_{p,inf} has no finite designated generating tuple")
        return tuple(self.gen(i) for i in range(self.m))

    def identity(self):
        return NilElt(())

    def _owns(self, g):
        if not isinstance(g, NilElt):
            return False
        for w, _ in g.coords:
            if len(w) > self.p or (self.m is not None and max(w) >= self.m):
                return False
        return True

    # -- Magnus algebra --------------------------------------------------
    def basis_poly(self, w: tuple) -> dict:
        # callers must not mutate the returned dict
        cache = self.__dict__.setdefault("_bp", {})
        poly = cache.get(w)
        if poly is None:
            poly = cache[w] = _basis_poly(w, self.p)
        return poly

    def magnus(self, g: NilElt) -> dict:
        hit = self._magnus_cache.get(g)
        if hit is not None:
            return hit
        out = {(): 1}
        for w, e in g.coords:
            out = poly_mul(out, poly_pow(self.basis_poly(w), e, self.p), self.p)
        if len(self._magnus_cache) > 200_000:
            self._magnus_cache.clear()
        self._magnus_cache[g] = out
        return out

    def from_magnus(self, poly: dict) -> NilElt:
        p = self.p
        rest = dict(poly)
        coords = []
        for wt in range(1, p + 1):
            comp = {m: c for m, c in rest.items() if len(m) == wt}
            layer = []
            while comp:
                m = min(comp)
                c = comp[m]
                lie = {mm: cc for mm, cc in self.basis_poly(m).items() if len(mm) == wt}
                if lie.get(m) != 1:
                    raise AssertionError(f"{m} is not a Lyndon leading monomial")
                for mm, cc in lie.items():
                    v = comp.get(mm, 0) - c * cc
                    if v:
                        comp[mm] = v
                    else:
                        comp.pop(mm, None)
                layer.append((m, c))
            if not layer:
                continue
            layer.sort()
            coords.extend(layer)
            if wt == p:
                break
            strip = {(): 1}
            for w, e in layer:
                strip = poly_mul(strip, poly_pow(self.basis_poly(w), e, p), p)
            rest = poly_mul(poly_pow(strip, -1, p), rest, p)
        return NilElt(tuple(coords))

    def _mul(self, g, h):
        if not g.coords:
            return h
        if not h.coords:
            return g
        return self.from_magnus(poly_mul(self.magnus(g), self.magnus(h), self.p))

    def _inv(self, g):
        if not g.coords:
            return g
        return self.from_magnus(poly_pow(self.magnus(g), -1, self.p))

    def power(self, g, n):
        self.check(g)
        if not g.coords or n == 1:
            return g
        return self.from_magnus(poly_pow(self.magnus(g), n, self.p))

    # -- structure -------------------------------------------------------
    def element_order(self, g):
        self.check(g)
        return 1 if not g.coords else None

    def exponent(self, g: NilElt, w: tuple) -> int:
        return dict(g.coords).get(tuple(w), 0)

    def abelianization(self, g: NilElt) -> tuple:
        """Weight-one exponents (the image in Z^m)."""
        d = {w[0]: e for w, e in g.coords if len(w) == 1}
        m = self.m if self.m is not None else (max(d) + 1 if d else 0)
        return tuple(d.get(i, 0) for i in range(m))

    def in_derived(self, g: NilElt) -> bool:
        return all(len(w) > 1 for w, _ in g.coords)

    def central_witness(self) -> NilElt:
        top = [w for w in self.basis() if len(w) == self.p]
        return self.basis_element(top[-1])

    def support(self, g: NilElt) -> set:
        return {i for w, _ in g.coords for i in w}

    def apply_hom(self, g: NilElt, images: dict, target: ComputableGroup):
        """Image of ``g`` under the homomorphism sending generator i to ``images[i]``."""
        memo: dict = {}

        def img(w):
            if w in memo:
                return memo[w]
            if len(w) == 1:
                r = images[w[0]]
            else:
                u, v = standard_factorization(w)
                r = target.commutator(img(u), img(v))
            memo[w] = r
            return r

        out = target.identity()
        for w, e in g.coords:
            out = target._mul(out, target.power(img(w), e))
        return out

    def enumerate(self, count):
        """For N_{p,inf}: round r adds the first r^2 elements of N_{p,r} not yet listed."""
        if self.m is not None:
            return super().enumerate(count)
        if count < 0:
            raise InputError("count must be nonnegative")
        cache = self.__dict__.setdefault("_inf_enum", {"list": [], "seen": set(), "round": 0})
        items, seen = cache["list"], cache["seen"]
        while len(items) < count:
            cache["round"] += 1
            r = cache["round"]
            for g in FreeNilpotent(self.p, r, unbounded=True).enumerate(r * r):
                if g not in seen:
                    seen.add(g)
                    items.append(g)
        return items[:count]

    # -- text --------------------------------------------------------------
    def spec_text(self):
        return f"freenil {self.p} {'inf' if self.m is None else self.m}"

    def format_element(self, g):
        self.check(g)
        return " ".join(["nil"] + [".".join(str(i + 1) for i in w) + f"={e}" for w, e in g.coords])

    def parse_element(self, text):
        parts = text.split()
        if not parts or parts[0] != "nil":
            raise ParseError(f"not a nil element: {text!r}")
        coords = {}
        for part in parts[1:]:
            try:
                w, e = part.split("=")
                word = tuple(int(i) - 1 for i in w.split("."))
                coords[word] = int(e)
            except ValueError as exc:
                raise ParseError(f"bad coordinate {part!r}") from exc
        for w in coords:
            if not is_lyndon(w) or len(w) > self.p or min(w) < 0:
                raise ParseError(f"{w} is not a basis word of {self.spec_text()}")
        g = NilElt(tuple(sorted(((w, e) for w, e in coords.items() if e), key=lambda we: basis_key(we[0]))))
        self.check(g)
        return g


@lru_cache(maxsize=None)
def _basis_poly_cached(w: tuple, p: int) -> tuple:
    if len(w) == 1:
        poly = {(): 1, w: 1}
    else:
        u, v = standard_factorization(w)
        a, b = dict(_basis_poly_cached(u, p)), dict(_basis_poly_cached(v, p))
        ab = poly_mul(a, b, p)
        poly = poly_mul(ab, poly_pow(poly_mul(b, a, p), -1, p), p)
    return tuple(poly.items())


def _basis_poly(w: tuple, p: int) -> dict:
    return dict(_basis_poly_cached(tuple(w), p))

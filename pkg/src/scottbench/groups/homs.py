"""Homomorphisms out of the implemented families, given by generator images.

Each family writes an element as a product of powers of (conjugated)
generators; substituting images gives the image element.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import UnsupportedError
from .abelian import FgAbelian
from .base import ComputableGroup
from .bs import BS1n
from .nilpotent import FreeNilpotent
from .products import ProductZ
from .wreath import WreathGroup


def apply_hom(source: ComputableGroup, g, images, target: ComputableGroup):
    """Image of ``g`` under the homomorphism ``source.generators()[i] -> images[i]``."""
    source.check(g)
    T = target
    if isinstance(source, FgAbelian):
        out = T.identity()
        for img, e in zip(images, g.free + g.tors):
            out = T._mul(out, T.power(img, e))
        return out
    if isinstance(source, FreeNilpotent):
        return source.apply_hom(g, dict(enumerate(images)), T)
    if isinstance(source, BS1n):
        a, b = images
        q = Fraction(g.q)
        j = 0
        while q.denominator != 1:
            q *= source.n
            j += 1
        base = T.conj(T.power(a, q.numerator), T.power(b, j))
        return T._mul(base, T.power(b, g.k))
    if isinstance(source, WreathGroup):
        a, *shifts = images
        out = T.identity()
        for pos, v in g.base:
            if source.scale:
                q = Fraction(v)
                j = 0
                while q.denominator != 1:
                    q *= source.scale
                    j += 1
                piece = T.conj(T.power(a, q.numerator), T.power(shifts[0], j))
                movers = shifts[1:]
            else:
                piece = T.power(a, v)
                movers = shifts
            mover = T.identity()
            for s, c in zip(movers, pos):
                mover = T._mul(mover, T.power(s, c))
            out = T._mul(out, T.conj(piece, T._inv(mover)))
        for s, c in zip(shifts, g.shift):
            out = T._mul(out, T.power(s, c))
        return out
    if isinstance(source, ProductZ):
        *base_imgs, c = images
        return T._mul(apply_hom(source.base, g.g, base_imgs, T), T.power(c, g.e))
    raise UnsupportedError(f"no homomorphism support for {source.spec_text()}")

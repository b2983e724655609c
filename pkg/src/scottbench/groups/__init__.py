"""Computable group families and the text format for group specs.

Spec text is ``[family] <tag> <params>``, for example ``bs1n 2``,
``freenil 2 2``, ``fgabelian 2 3 4`` (Z^2 + Z/3 + Z/4), ``lamplighter 3``,
``zwrz``, ``prodz bs1n 2`` or ``colimit freenil 2 2``.
"""
from __future__ import annotations

from ..errors import InputError
from .abelian import AbElt, FgAbelian
from .base import ComputableGroup
from .bs import BS1n, BSElt
from .colimit import Colimit, ColElt, Endo, default_endo, dilation
from .homs import apply_hom
from .nilpotent import FreeNilpotent, NilElt
from .products import PZElt, ProductZ
from .wreath import BS1nWr, LamplighterD, WrElt, WreathGroup, ZdWrZ2, ZWrZ, ZWrZ2

__all__ = [
    "AbElt", "BS1n", "BS1nWr", "BSElt", "ColElt", "Colimit", "ComputableGroup", "Endo",
    "FgAbelian", "FreeNilpotent", "LamplighterD", "NilElt", "PZElt", "ProductZ", "WrElt",
    "WreathGroup", "ZWrZ", "ZWrZ2", "ZdWrZ2", "apply_hom", "default_endo", "dilation",
    "parse_spec", "direct_limit",
]


def _ints(args, count, tag):
    if len(args) != count:
        raise InputError(f"{tag} takes {count} integer parameter(s)")
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise InputError(f"{tag}: parameters must be integers") from exc


def parse_spec(text: str) -> ComputableGroup:
    tokens = text.split()
    if tokens and tokens[0] == "family":
        tokens = tokens[1:]
    if not tokens:
        raise InputError("empty group spec")
    tag, args = tokens[0], tokens[1:]
    if tag == "fgabelian":
        if not args:
            raise InputError("fgabelian needs a free rank")
        vals = _ints(args, len(args), tag)
        return FgAbelian(vals[0], vals[1:])
    if tag == "freenil":
        if len(args) != 2:
            raise InputError("freenil takes class and rank")
        p = _ints(args[:1], 1, tag)[0]
        if args[1] == "inf":
            if p > 3:
                raise InputError("N_{p,inf} supported for class <= 3")
            return FreeNilpotent(p, None, unbounded=True)
        return FreeNilpotent(p, _ints(args[1:], 1, tag)[0])
    if tag == "lamplighter":
        return LamplighterD(*_ints(args, 1, tag))
    if tag == "zwrz":
        _ints(args, 0, tag)
        return ZWrZ()
    if tag == "zdwrz2":
        return ZdWrZ2(*_ints(args, 1, tag))
    if tag == "zwrz2":
        _ints(args, 0, tag)
        return ZWrZ2()
    if tag == "bs1n":
        return BS1n(*_ints(args, 1, tag))
    if tag == "bs1nwr":
        return BS1nWr(*_ints(args, 1, tag))
    if tag == "prodz":
        return ProductZ(parse_spec(" ".join(args)))
    if tag == "colimit":
        if args and not args[0][0].isalpha() or not args:
            raise InputError("colimit needs a base spec")
        if args[0].startswith(("dilation-", "t-squared", "a-to-", "double-free")):
            args = args[1:]
        return direct_limit(parse_spec(" ".join(args)))
    if tag == "qsub":
        from ..qgroups import QGroupSpec

        return QGroupSpec.parse(" ".join(tokens)).group()
    raise InputError(f"unknown group family {tag!r}")


def direct_limit(G: ComputableGroup, endo: Endo | None = None) -> Colimit:
    """Direct limit along ``endo`` (default: the family's proper injective endomorphism)."""
    return Colimit(endo if endo is not None else default_endo(G))

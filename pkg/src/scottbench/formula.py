"""Formulas of L_{omega1,omega} over the language of groups.

Infinite conjunctions and disjunctions are never materialised: a ``BigAnd``
or ``BigOr`` names a registered builder plus parameters, and the builder
produces the i-th junct on demand.  Builders declare the complexity of their
juncts; ``classify`` trusts the declaration after checking it on a sample.

Text format (S-expressions)::

    (eq [x y] x.y.x^-1.y^-1)          w(x, y) = 1
    (neq [x] x^2)                     w(x) != 1
    (qeq [x y] x.y^-1 g GUARD)        w = 1 modulo the set defined by GUARD(g)
    (qneq [x y] x.y^-1 g GUARD)
    (and F ...) (or F ...)            (and) is true, (or) is false
    (exists [x y] F) (forall [x] F)
    (bigand "builder" [params] [xforms]) / (bigor ...)
    (relativize g GUARD F MODE)       MODE is plain, modulo or quotient
    (oracle "name" [args] [params] pos F)

Parameters are integers, quoted strings, formulas or bracketed lists of
those.  Transformations (``xforms``) are ``(negate)``, ``(rename old new)``
and ``(relativize g GUARD MODE)``, applied lazily to every junct.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Union

from .errors import ClassificationViolation, InputError, ParseError, UnknownBuilder
from .words import Word, format_word, parse_word


class Formula:
    """Base class of formula nodes; nodes are immutable and compare structurally."""

    @property
    def free(self) -> frozenset:
        raise NotImplementedError

    def __str__(self):
        return serialize(self)


@dataclass(frozen=True)
class AtomEq(Formula):
    """``w(args) = 1``; letter i of ``word`` stands for ``args[i]``."""

    args: tuple
    word: Word

    @cached_property
    def free(self):
        return frozenset(self.args)


@dataclass(frozen=True)
class AtomNeq(Formula):
    args: tuple
    word: Word

    @cached_property
    def free(self):
        return frozenset(self.args)


@dataclass(frozen=True)
class QuotEq(Formula):
    """``w(args)`` lies in the subgroup defined by ``guard`` (free variable ``var``).

    Stands for ``exists var (guard(var) and w(args) = var)``.
    """

    args: tuple
    word: Word
    var: str
    guard: Formula

    @cached_property
    def free(self):
        return frozenset(self.args)

    def expand(self) -> Formula:
        eq = AtomEq(self.args + (self.var,), self.word + ((len(self.args), -1),))
        return Exists((self.var,), And((self.guard, eq)))


@dataclass(frozen=True)
class QuotNeq(Formula):
    """Negation of :class:`QuotEq`: ``forall var (not guard(var) or w(args) != var)``."""

    args: tuple
    word: Word
    var: str
    guard: Formula

    @cached_property
    def free(self):
        return frozenset(self.args)

    def expand(self) -> Formula:
        neq = AtomNeq(self.args + (self.var,), self.word + ((len(self.args), -1),))
        return Forall((self.var,), Or((negate(self.guard), neq)))


@dataclass(frozen=True)
class And(Formula):
    parts: tuple

    @cached_property
    def free(self):
        return frozenset().union(*(p.free for p in self.parts))


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple

    @cached_property
    def free(self):
        return frozenset().union(*(p.free for p in self.parts))


TRUE = And(())
FALSE = Or(())


@dataclass(frozen=True)
class Exists(Formula):
    vars: tuple
    body: Formula

    @cached_property
    def free(self):
        return self.body.free - set(self.vars)


@dataclass(frozen=True)
class Forall(Formula):
    vars: tuple
    body: Formula

    @cached_property
    def free(self):
        return self.body.free - set(self.vars)


@dataclass(frozen=True)
class BigAnd(Formula):
    builder: str
    params: tuple = ()
    xforms: tuple = ()

    @cached_property
    def free(self):
        return _junction_free(self)

    def item(self, i: int) -> Optional[Formula]:
        return _junct(self, i)

    @cached_property
    def bound(self) -> Optional[int]:
        return get_builder(self.builder).bound(self.params)


@dataclass(frozen=True)
class BigOr(Formula):
    builder: str
    params: tuple = ()
    xforms: tuple = ()

    @cached_property
    def free(self):
        return _junction_free(self)

    def item(self, i: int) -> Optional[Formula]:
        return _junct(self, i)

    @cached_property
    def bound(self) -> Optional[int]:
        return get_builder(self.builder).bound(self.params)


MODES = ("plain", "modulo", "quotient")


@dataclass(frozen=True)
class Relativized(Formula):
    """``body`` relativized to the subgroup defined by ``guard`` (free variable ``var``).

    Modes: ``plain`` restricts every quantifier to the subgroup, ``modulo``
    turns atoms into equalities modulo the subgroup, ``quotient`` does both.
    """

    var: str
    guard: Formula
    body: Formula
    mode: str = "plain"

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown relativization mode {self.mode!r}")

    @cached_property
    def free(self):
        return self.body.free

    @cached_property
    def expanded(self) -> Formula:
        return _relativize(self.body, self.var, self.guard, self.mode)


@dataclass(frozen=True)
class Oracle(Formula):
    """Logically just ``body``; an evaluator may instead ask the named exact decider.

    ``positive`` says whether the decider's answer is the truth value of
    ``body`` (True) or of its negation.
    """

    name: str
    args: tuple
    params: tuple
    positive: bool
    body: Formula

    @cached_property
    def free(self):
        return self.body.free


Junction = Union[BigAnd, BigOr]


# ---------------------------------------------------------------------------
# builder registry


@dataclass(frozen=True)
class Builder:
    name: str
    item: Callable  # (params, i) -> Formula | None (None past a finite index set)
    free: Callable  # params -> iterable of variable names
    item_class: tuple  # declared (sigma, pi, delta) bound on every junct
    bound: Callable = lambda params: None  # number of juncts when finite
    modulo_class: tuple = (2, 2, 1)  # bound on juncts once atoms are read modulo a subgroup


_BUILDERS: dict = {}


def register_builder(name, item, free, item_class, bound=None, modulo_class=None) -> Builder:
    """Register a junction builder.

    ``modulo_class`` is the declared class of a junct after its atoms become
    equalities modulo a Sigma(1)-definable subgroup; it defaults to d-Sigma(1)
    (mixed atoms) for finitary juncts and to ``item_class`` otherwise.
    """
    item_class = tuple(item_class)
    if modulo_class is None:
        modulo_class = (2, 2, 1) if item_class == FIN else item_class
    b = Builder(name, item, free, item_class, bound or (lambda params: None), tuple(modulo_class))
    _BUILDERS[name] = b
    return b


def get_builder(name: str) -> Builder:
    try:
        return _BUILDERS[name]
    except KeyError:
        raise UnknownBuilder(f"unknown builder {name!r}") from None


def builders() -> list:
    return sorted(_BUILDERS)


_JUNCT_CACHE: dict = {}


def _junct(node: Junction, i: int) -> Optional[Formula]:
    key = (node, i)
    hit = _JUNCT_CACHE.get(key, _JUNCT_CACHE)
    if hit is not _JUNCT_CACHE:
        return hit
    b = get_builder(node.builder)
    n = b.bound(node.params)
    f = None if (i < 0 or (n is not None and i >= n)) else b.item(node.params, i)
    if f is not None:
        for xf in node.xforms:
            if xf[0] == "negate":
                f = negate(f)
            elif xf[0] == "relativize":
                f = Relativized(xf[1], xf[2], f, xf[3])
            elif xf[0] == "rename":
                f = rename_free(f, xf[1], xf[2])
            else:
                raise InputError(f"unknown junct transformation {xf[0]!r}")
    if len(_JUNCT_CACHE) > 500_000:
        _JUNCT_CACHE.clear()
    _JUNCT_CACHE[key] = f
    return f


def _junction_free(node: Junction) -> frozenset:
    free = set(get_builder(node.builder).free(node.params))
    for xf in node.xforms:
        if xf[0] == "rename" and xf[1] in free:
            free = (free - {xf[1]}) | {xf[2]}
    return frozenset(free)


def juncts(node: Junction, limit: int):
    """The first ``limit`` juncts (fewer if the index set is finite)."""
    for i in range(limit):
        f = node.item(i)
        if f is None:
            return
        yield f


# ---------------------------------------------------------------------------
# complexity classes

Triple = tuple  # (sigma, pi, delta): least n with f in Sigma_n / Pi_n / d-Sigma_n


@dataclass(frozen=True)
class ComplexityClass:
    tag: str  # "Finitary", "Sigma", "Pi", "DSigma"
    level: int = 0

    def __str__(self):
        return self.tag if self.tag == "Finitary" else f"{self.tag}({self.level})"

    def dual(self) -> "ComplexityClass":
        swap = {"Sigma": "Pi", "Pi": "Sigma"}
        return ComplexityClass(swap.get(self.tag, self.tag), self.level)


def Sigma(n: int) -> ComplexityClass:
    return ComplexityClass("Sigma", n)


def Pi(n: int) -> ComplexityClass:
    return ComplexityClass("Pi", n)


def DSigma(n: int) -> ComplexityClass:
    return ComplexityClass("DSigma", n)


FINITARY = ComplexityClass("Finitary", 0)

PI1 = (2, 1, 1)
SIGMA1 = (1, 2, 1)
FIN = (0, 0, 0)


def _normalize(s: int, p: int, d: int) -> Triple:
    d = min(d, s, p)
    s = min(s, p + 1, d + 1)
    p = min(p, s + 1, d + 1)
    return (s, p, min(d, s, p))


def report(t: Triple) -> ComplexityClass:
    s, p, d = t
    if s == p == d == 0:
        return FINITARY
    if s < p:
        return Sigma(s)
    if p < s:
        return Pi(p)
    if d < s:
        return DSigma(d)
    return Pi(p)  # not reached for normalized triples


def class_triple(c: ComplexityClass) -> Triple:
    if c.tag == "Finitary":
        return FIN
    n = c.level
    if c.tag == "Sigma":
        return _normalize(n, n + 1, n)
    if c.tag == "Pi":
        return _normalize(n + 1, n, n)
    return _normalize(n + 1, n + 1, n)


DEFAULT_SAMPLE = 6


def triple(f: Formula, sample: int = DEFAULT_SAMPLE) -> Triple:
    """Least levels of the hierarchy containing ``f``, by structural induction."""
    key = (f, sample)
    hit = _TRIPLE_CACHE.get(key)
    if hit is None:
        hit = _TRIPLE_CACHE[key] = _triple(f, sample)
    return hit


_TRIPLE_CACHE: dict = {}


def _triple(f: Formula, sample: int) -> Triple:
    if isinstance(f, (AtomEq, AtomNeq)):
        return FIN
    if isinstance(f, (QuotEq, QuotNeq)):
        return triple(f.expand(), sample)
    if isinstance(f, Relativized):
        return triple(f.expanded, sample)
    if isinstance(f, Oracle):
        return triple(f.body, sample)
    if isinstance(f, And):
        if not f.parts:
            return FIN
        ts = [triple(p, sample) for p in f.parts]
        return _normalize(*(max(t[i] for t in ts) for i in range(3)))
    if isinstance(f, Or):
        if not f.parts:
            return FIN
        ts = [triple(p, sample) for p in f.parts]
        s = max(t[0] for t in ts)
        p = max(t[1] for t in ts)
        return _normalize(s, p, min(s, p, max(t[2] for t in ts) + 1))
    if isinstance(f, Exists):
        sb, pb, _ = triple(f.body, sample)
        s = max(1, min(sb, pb + 1))
        return _normalize(s, s + 1, s)
    if isinstance(f, Forall):
        sb, pb, _ = triple(f.body, sample)
        p = max(1, min(pb, sb + 1))
        return _normalize(p + 1, p, p)
    if isinstance(f, (BigAnd, BigOr)):
        declared = declared_item_triple(f)
        for i, item in enumerate(juncts(f, sample)):
            got = triple(item, sample)
            if any(g > d for g, d in zip(got, declared)):
                raise ClassificationViolation(
                    f"junct {i} of {f.builder} is {report(got)}, above the declared {report(declared)}"
                )
        if isinstance(f, BigAnd):
            p = max(1, declared[1])
            return _normalize(p + 1, p, p)
        s = max(1, declared[0])
        return _normalize(s, s + 1, s)
    raise InputError(f"not a formula: {f!r}")


def declared_item_triple(f: Junction) -> Triple:
    b = get_builder(f.builder)
    t, mod = b.item_class, b.modulo_class
    for xf in f.xforms:
        if xf[0] == "negate":
            t, mod = (t[1], t[0], t[2]), (mod[1], mod[0], mod[2])
        elif xf[0] == "relativize" and xf[3] != "plain":
            t = mod
    return t


def classify(f: Formula, sample: int = DEFAULT_SAMPLE) -> ComplexityClass:
    return report(triple(f, sample))


# ---------------------------------------------------------------------------
# negation and relativization


def negate(f: Formula) -> Formula:
    if isinstance(f, AtomEq):
        return AtomNeq(f.args, f.word)
    if isinstance(f, AtomNeq):
        return AtomEq(f.args, f.word)
    if isinstance(f, QuotEq):
        return QuotNeq(f.args, f.word, f.var, f.guard)
    if isinstance(f, QuotNeq):
        return QuotEq(f.args, f.word, f.var, f.guard)
    if isinstance(f, And):
        return Or(tuple(negate(p) for p in f.parts))
    if isinstance(f, Or):
        return And(tuple(negate(p) for p in f.parts))
    if isinstance(f, Exists):
        return Forall(f.vars, negate(f.body))
    if isinstance(f, Forall):
        return Exists(f.vars, negate(f.body))
    if isinstance(f, (BigAnd, BigOr)):
        other = BigOr if isinstance(f, BigAnd) else BigAnd
        xs = f.xforms
        xs = xs[:-1] if xs and xs[-1] == ("negate",) else xs + (("negate",),)
        return other(f.builder, f.params, xs)
    if isinstance(f, Relativized):
        return Relativized(f.var, f.guard, negate(f.body), f.mode)
    if isinstance(f, Oracle):
        return Oracle(f.name, f.args, f.params, not f.positive, negate(f.body))
    raise InputError(f"not a formula: {f!r}")


def relativize(f: Formula, guard: Formula, mode: str = "plain") -> Relativized:
    """Relativize ``f`` to the subgroup defined by the one-variable Sigma(1) ``guard``."""
    if len(guard.free) != 1:
        raise InputError("a relativization guard needs exactly one free variable")
    if triple(guard)[0] > 1:
        raise ClassificationViolation(f"relativization guard must be Sigma(1), got {classify(guard)}")
    (var,) = guard.free
    return Relativized(var, guard, f, mode)


def rename_free(f: Formula, old: str, new: str) -> Formula:
    """Rename a free variable in a guard (guards are small finite formulas)."""
    if isinstance(f, (AtomEq, AtomNeq)):
        return type(f)(tuple(new if a == old else a for a in f.args), f.word)
    if isinstance(f, (And, Or)):
        return type(f)(tuple(rename_free(p, old, new) for p in f.parts))
    if isinstance(f, (Exists, Forall)):
        if old in f.vars:
            return f
        if new in f.vars:
            raise InputError(f"renaming {old} to {new} would be captured")
        return type(f)(f.vars, rename_free(f.body, old, new))
    if isinstance(f, (BigAnd, BigOr)):
        if old not in f.free:
            return f
        if new in f.free:
            raise InputError(f"renaming {old} to {new} would merge variables")
        return type(f)(f.builder, f.params, f.xforms + (("rename", old, new),))
    if isinstance(f, Oracle):
        return Oracle(f.name, tuple(new if a == old else a for a in f.args), f.params, f.positive,
                      rename_free(f.body, old, new))
    raise InputError(f"cannot rename inside {type(f).__name__}")


def instantiate_guard(var: str, guard: Formula, target: str) -> Formula:
    return guard if var == target else rename_free(guard, var, target)


def _relativize(f: Formula, var: str, guard: Formula, mode: str) -> Formula:
    rec = lambda g: _relativize(g, var, guard, mode)  # noqa: E731
    quotient = mode != "plain"
    guarded = mode != "modulo"
    if isinstance(f, AtomEq):
        return QuotEq(f.args, f.word, var, guard) if quotient else f
    if isinstance(f, AtomNeq):
        return QuotNeq(f.args, f.word, var, guard) if quotient else f
    if isinstance(f, (QuotEq, QuotNeq)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(tuple(rec(p) for p in f.parts))
    if isinstance(f, (Exists, Forall)) and not guarded:
        return type(f)(f.vars, rec(f.body))
    if isinstance(f, Exists):
        gs = tuple(instantiate_guard(var, guard, v) for v in f.vars)
        return Exists(f.vars, And(gs + (rec(f.body),)))
    if isinstance(f, Forall):
        gs = tuple(negate(instantiate_guard(var, guard, v)) for v in f.vars)
        return Forall(f.vars, Or(gs + (rec(f.body),)))
    if isinstance(f, (BigAnd, BigOr)):
        return type(f)(f.builder, f.params, f.xforms + (("relativize", var, guard, mode),))
    if isinstance(f, Relativized):
        return rec(f.expanded)
    if isinstance(f, Oracle):
        # the exact decider answers for the unrestricted formula; drop it
        return rec(f.body)
    raise InputError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# text format

_TOKEN_RE = re.compile(r'\s*(?:(\()|(\))|(\[)|(\])|"((?:[^"\\]|\\.)*)"|([^\s()\[\]"]+))')


class _Str(str):
    """A quoted string token."""


def _tokenize(text: str) -> list:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            out.append("(")
        elif m.group(2):
            out.append(")")
        elif m.group(3):
            out.append("[")
        elif m.group(4):
            out.append("]")
        elif m.group(5) is not None:
            out.append(_Str(m.group(5).replace('\\"', '"').replace("\\\\", "\\")))
        else:
            out.append(m.group(6))
    return out


def _read(tokens: list, i: int):
    """Read one S-expression: ('(', items) for lists, ('[', items) for brackets, or a token."""
    if i >= len(tokens):
        raise ParseError("unexpected end of input")
    t = tokens[i]
    if t in ("(", "[") and not isinstance(t, _Str):
        close = ")" if t == "(" else "]"
        items, i = [], i + 1
        while True:
            if i >= len(tokens):
                raise ParseError(f"missing {close!r}")
            if tokens[i] == close and not isinstance(tokens[i], _Str):
                return (t, items), i + 1
            if tokens[i] in (")", "]") and not isinstance(tokens[i], _Str):
                raise ParseError(f"mismatched {tokens[i]!r}")
            item, i = _read(tokens, i)
            items.append(item)
    if t in (")", "]") and not isinstance(t, _Str):
        raise ParseError(f"unexpected {t!r}")
    return t, i + 1


def parse(text: str) -> Formula:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty formula")
    if tokens[0] != "(":
        tokens = ["("] + tokens + [")"]
    tree, end = _read(tokens, 0)
    if end != len(tokens):
        raise ParseError("trailing input after formula")
    return _build(tree)


def _names(tree) -> tuple:
    if not (isinstance(tree, tuple) and tree[0] == "["):
        raise ParseError("expected a bracketed variable list")
    for v in tree[1]:
        if not isinstance(v, str) or isinstance(v, _Str) or not re.fullmatch(r"[A-Za-z_]\w*", v):
            raise ParseError(f"bad variable name {v!r}")
    return tuple(tree[1])


def _atom_word(args: tuple, text) -> Word:
    if not isinstance(text, str):
        raise ParseError("expected a word")
    return parse_word(text, args)


def _param(tree):
    if isinstance(tree, tuple):
        if tree[0] == "[":
            return tuple(_param(t) for t in tree[1])
        return _build(tree)
    if isinstance(tree, _Str):
        return str(tree)
    if tree in ("true", "false"):
        return tree == "true"
    try:
        return int(tree)
    except ValueError:
        raise ParseError(f"bad parameter {tree!r}") from None


def _build(tree) -> Formula:
    if not (isinstance(tree, tuple) and tree[0] == "("):
        raise ParseError(f"expected a formula, got {tree!r}")
    items = tree[1]
    if not items or isinstance(items[0], tuple):
        raise ParseError("formula needs a head keyword")
    head, rest = items[0], items[1:]
    try:
        if head in ("eq", "neq"):
            args = _names(rest[0])
            cls = AtomEq if head == "eq" else AtomNeq
            if len(rest) != 2:
                raise ParseError(f"{head} takes a variable list and a word")
            return cls(args, _atom_word(args, rest[1]))
        if head in ("qeq", "qneq"):
            args = _names(rest[0])
            cls = QuotEq if head == "qeq" else QuotNeq
            return cls(args, _atom_word(args, rest[1]), str(rest[2]), _build(rest[3]))
        if head in ("and", "or"):
            return (And if head == "and" else Or)(tuple(_build(t) for t in rest))
        if head in ("exists", "forall"):
            if len(rest) != 2:
                raise ParseError(f"{head} takes a variable list and a body")
            return (Exists if head == "exists" else Forall)(_names(rest[0]), _build(rest[1]))
        if head in ("bigand", "bigor"):
            if not rest or isinstance(rest[0], tuple):
                raise ParseError("junction needs a builder name")
            name = str(rest[0])
            get_builder(name)
            params = _param(rest[1]) if len(rest) > 1 else ()
            xforms = tuple(_xform(t) for t in rest[2][1]) if len(rest) > 2 else ()
            return (BigAnd if head == "bigand" else BigOr)(name, params, xforms)
        if head == "relativize":
            return Relativized(str(rest[0]), _build(rest[1]), _build(rest[2]), str(rest[3]))
        if head == "oracle":
            return Oracle(str(rest[0]), _names(rest[1]), _param(rest[2]), rest[3] == "pos", _build(rest[4]))
    except IndexError:
        raise ParseError(f"too few arguments for {head}") from None
    raise ParseError(f"unknown formula head {head!r}")


def _xform(tree) -> tuple:
    if not (isinstance(tree, tuple) and tree[0] == "(" and tree[1]):
        raise ParseError("bad junct transformation")
    items = tree[1]
    if items[0] == "negate":
        return ("negate",)
    if items[0] == "relativize":
        return ("relativize", str(items[1]), _build(items[2]), str(items[3]))
    if items[0] == "rename":
        return ("rename", str(items[1]), str(items[2]))
    raise ParseError(f"unknown junct transformation {items[0]!r}")


def _fmt_param(p) -> str:
    if isinstance(p, bool):
        return "true" if p else "false"
    if isinstance(p, int):
        return str(p)
    if isinstance(p, str):
        return '"' + p.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(p, tuple):
        return "[" + " ".join(_fmt_param(x) for x in p) + "]"
    if isinstance(p, Formula):
        return serialize(p)
    raise InputError(f"unserializable parameter {p!r}")


def _fmt_word(args, word) -> str:
    return format_word(word, args, sep=".")


def serialize(f: Formula) -> str:
    if isinstance(f, (AtomEq, AtomNeq)):
        head = "eq" if isinstance(f, AtomEq) else "neq"
        return f"({head} [{' '.join(f.args)}] {_fmt_word(f.args, f.word)})"
    if isinstance(f, (QuotEq, QuotNeq)):
        head = "qeq" if isinstance(f, QuotEq) else "qneq"
        return f"({head} [{' '.join(f.args)}] {_fmt_word(f.args, f.word)} {f.var} {serialize(f.guard)})"
    if isinstance(f, (And, Or)):
        head = "and" if isinstance(f, And) else "or"
        return "(" + " ".join([head] + [serialize(p) for p in f.parts]) + ")"
    if isinstance(f, (Exists, Forall)):
        head = "exists" if isinstance(f, Exists) else "forall"
        return f"({head} [{' '.join(f.vars)}] {serialize(f.body)})"
    if isinstance(f, (BigAnd, BigOr)):
        head = "bigand" if isinstance(f, BigAnd) else "bigor"
        out = f"({head} {_fmt_param(f.builder)} {_fmt_param(f.params)}"
        if f.xforms:
            out += " [" + " ".join(_fmt_xform(x) for x in f.xforms) + "]"
        return out + ")"
    if isinstance(f, Relativized):
        return f"(relativize {f.var} {serialize(f.guard)} {serialize(f.body)} {f.mode})"
    if isinstance(f, Oracle):
        sign = "pos" if f.positive else "neg"
        return (f"(oracle {_fmt_param(f.name)} [{' '.join(f.args)}] {_fmt_param(f.params)} "
                f"{sign} {serialize(f.body)})")
    raise InputError(f"not a formula: {f!r}")


def _fmt_xform(x) -> str:
    if x[0] == "negate":
        return "(negate)"
    if x[0] == "rename":
        return f"(rename {x[1]} {x[2]})"
    return f"(relativize {x[1]} {serialize(x[2])} {x[3]})"


def pretty(f: Formula, indent: int = 0, width: int = 100) -> str:
    """Indented rendering of the S-expression, one subformula per line when long."""
    flat = serialize(f)
    pad = "  " * indent
    if len(flat) + len(pad) <= width or isinstance(f, (AtomEq, AtomNeq, BigAnd, BigOr, QuotEq, QuotNeq)):
        return pad + flat
    if isinstance(f, (And, Or)):
        head = "and" if isinstance(f, And) else "or"
        inner = "\n".join(pretty(p, indent + 1, width) for p in f.parts)
        return f"{pad}({head}\n{inner})"
    if isinstance(f, (Exists, Forall)):
        head = "exists" if isinstance(f, Exists) else "forall"
        return f"{pad}({head} [{' '.join(f.vars)}]\n{pretty(f.body, indent + 1, width)})"
    return pad + flat

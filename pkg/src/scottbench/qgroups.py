"""Subgroups of Q containing 1, described by how each prime divides 1.

Every prime p gets a class: ``P0`` (p does not divide 1), ``k`` (p^k divides
1 but p^(k+1) does not) or ``inf`` (every power divides 1).  Primes are
indexed p_0 = 2, p_1 = 3, ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Union

from .errors import InputError, ParseError, UnsupportedError
from .evaluator import register_oracle
from .formula import (
    PI1,
    And,
    AtomEq,
    AtomNeq,
    BigAnd,
    BigOr,
    Exists,
    FIN,
    Forall,
    Formula,
    Oracle,
    Or,
    register_builder,
)
from .groups.base import ComputableGroup
from .priority import PriorityState
from .reductions import StagedSet

__all__ = [
    "P0", "INF", "nth_prime", "prime_index", "factor", "QGroupSpec", "QSub", "iso_compare",
    "SyntheticHalting", "Sigma3Run", "build_sigma3_reduction", "pi3_pseudo_scott", "g_x_spec",
    "subgroup_of_q_formula",
]

P0 = "P0"
INF = "inf"
Cls = Union[str, int]  # P0, INF or an exponent k >= 1


# -- primes -------------------------------------------------------------------

_PRIMES = [2]


def nth_prime(i: int) -> int:
    if i < 0:
        raise InputError("prime index must be nonnegative")
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] + 1
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 1
        _PRIMES.append(c)
    return _PRIMES[i]


def prime_index(p: int) -> int:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    i = 0
    while nth_prime(i) != p:
        i += 1
    return i


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


@lru_cache(maxsize=4096)
def factor(n: int) -> tuple:
    """Prime factorization of ``n >= 1`` as ((p, e), ...)."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _check_cls(c) -> Cls:
    if c in (P0, INF):
        return c
    if isinstance(c, int) and not isinstance(c, bool) and c >= 1:
        return c
    raise InputError(f"bad prime class {c!r}")


# -- specs ------------------------------------------------------------------------


@dataclass(frozen=True)
class QGroupSpec:
    """A finite table of prime classes plus a default for all other primes.

    ``default=None`` means unlisted primes are not yet determined (a stage of
    a stagewise description); queries that need them return None.
    """

    table: tuple  # sorted ((p, cls), ...)
    default: Optional[Cls] = P0

    def __post_init__(self):
        for p, c in self.table:
            if not is_prime(p):
                raise InputError(f"{p} is not prime")
            _check_cls(c)
        if self.default is not None:
            _check_cls(self.default)

    @classmethod
    def make(cls, table: dict, default: Optional[Cls] = P0) -> "QGroupSpec":
        return cls(tuple(sorted(table.items())), default)

    def cls_of(self, p: int) -> Optional[Cls]:
        return dict(self.table).get(p, self.default)

    # P^0, P^fin, P^inf, P^k restricted to the listed primes
    def listed(self, pred) -> set:
        return {p for p, c in self.table if pred(c)}

    def p_inf(self) -> set:
        return self.listed(lambda c: c == INF)

    def p_fin(self) -> set:
        return self.listed(lambda c: isinstance(c, int))

    def p_zero(self) -> set:
        return self.listed(lambda c: c == P0)

    def p_k(self, k: int) -> set:
        return self.listed(lambda c: c == k) if k else self.p_zero()

    def member(self, q) -> Optional[bool]:
        """Is the rational ``q`` in the group?  None when a needed prime is undetermined."""
        q = Fraction(q)
        undecided = False
        for p, e in factor(q.denominator):
            c = self.cls_of(p)
            if c is None:
                undecided = True
            elif c == P0 or (isinstance(c, int) and c < e):
                return False
        return None if undecided else True

    def text(self) -> str:
        inf = ",".join(str(p) for p in sorted(self.p_inf()))
        fin = ",".join(f"{p}:{c}" for p, c in self.table if isinstance(c, int))
        zero = ",".join(str(p) for p in sorted(self.p_zero()))
        parts = ["qsub"]
        if inf:
            parts.append(f"inf={inf}")
        if fin:
            parts.append(f"fin={fin}")
        if zero:
            parts.append(f"zero={zero}")
        parts.append(f"default={'?' if self.default is None else self.default}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "QGroupSpec":
        tokens = text.split()
        if tokens and tokens[0] == "family":
            tokens = tokens[1:]
        if not tokens or tokens[0] != "qsub":
            raise ParseError("a subgroup-of-Q spec starts with 'qsub'")
        table: dict = {}
        default: Optional[Cls] = P0
        for tok in tokens[1:]:
            key, sep, val = tok.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, got {tok!r}")
            try:
                if key == "default":
                    default = None if val == "?" else (val if val in (P0, INF) else int(val))
                    continue
                items = [v for v in val.split(",") if v]
                for item in items:
                    if key == "inf":
                        table[int(item)] = INF
                    elif key == "zero":
                        table[int(item)] = P0
                    elif key == "fin":
                        p, _, k = item.partition(":")
                        table[int(p)] = int(k) if k else 1
                    else:
                        raise ParseError(f"unknown key {key!r}")
            except ValueError:
                raise ParseError(f"bad value in {tok!r}") from None
        return cls.make(table, default)

    def group(self) -> "QSub":
        return QSub(self)


def iso_compare(a: QGroupSpec, b: QGroupSpec, star_tolerance: Optional[int] = None) -> bool:
    """Isomorphism of the two subgroups by their prime invariants.

    P^k(a) =* P^k(b) for every k with equality for cofinitely many k, and
    P^inf(a) = P^inf(b).  For finite tables this means equal defaults and
    equal P^inf on the listed primes.  ``star_tolerance`` additionally caps
    the number of listed primes with differing finite classes, which is how
    stage snapshots of an infinite difference show up.
    """
    if a.default is None or b.default is None:
        raise UnsupportedError("isomorphism needs fully determined specs")
    if a.default != b.default:
        return False
    primes = {p for p, _ in a.table} | {p for p, _ in b.table}
    diff = 0
    for p in primes:
        ca, cb = a.cls_of(p), b.cls_of(p)
        if (ca == INF) != (cb == INF):
            return False
        if ca != cb:
            diff += 1
    return star_tolerance is None or diff <= star_tolerance


# -- the group ---------------------------------------------------------------------


class QSub(ComputableGroup):
    """The subgroup of (Q, +) given by a spec; elements are Fractions."""

    tag = "qsub"
    gen_names = ("u",)  # u = 1

    def __init__(self, spec: QGroupSpec):
        if spec.default is None:
            raise UnsupportedError("cannot build a group from an undetermined spec")
        self.spec = spec

    def identity(self):
        return Fraction(0)

    def generators(self):
        return (Fraction(1),)

    def _owns(self, g):
        return isinstance(g, Fraction) and self.spec.member(g) is True

    def _mul(self, g, h):
        return g + h

    def _inv(self, g):
        return -g

    def power(self, g, n: int):
        return g * n

    def element_order(self, g):
        return 1 if g == 0 else None

    def divides(self, p: int, g: Fraction) -> bool:
        """Does ``p`` divide ``g`` in the group (is g/p a member)?"""
        return self.spec.member(g / p) is True

    def allowed_denominator(self, d: int) -> bool:
        return self.spec.member(Fraction(1, d)) is True

    def enumerate(self, count: int) -> list:
        """By height max(|a|, d) of a/d in lowest terms, then by value."""
        if count < 0:
            raise InputError("count must be nonnegative")
        cache = self.__dict__.setdefault("_enum_cache", {"list": [Fraction(0)], "h": 0})
        items = cache["list"]
        while len(items) < count:
            cache["h"] += 1
            h = cache["h"]
            layer = set()
            for d in range(1, h + 1):
                if not self.allowed_denominator(d):
                    continue
                nums = [h] if d < h else range(1, h + 1)
                for a in nums:
                    q = Fraction(a, d)
                    if q.denominator == d and max(abs(q.numerator), q.denominator) == h:
                        layer.add(q)
                        layer.add(-q)
            items.extend(sorted(layer, key=lambda q: (abs(q), q < 0)))
        return items[:count]

    def spec_text(self):
        return self.spec.text()

    def format_element(self, g):
        return str(g)

    def parse_element(self, text):
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {text!r}") from None
        if not self._owns(q):
            raise InputError(f"{q} is not in {self.spec_text()}")
        return q


# -- the Sigma_3 reduction ------------------------------------------------------------------


def _pair(m: int, s: int) -> int:
    return (m + s) * (m + s + 1) // 2 + s


@dataclass
class SyntheticHalting:
    """A stand-in for the halting set, built from injected tables.

    ``base[e]`` is the stage at which the base index 2e halts.  For the codes
    2<m, s>+1 (the program that halts on itself iff program m halts on s)
    ``programs[m](s)`` gives the halting stage of program m on input s, or
    None if it diverges.
    """

    base: dict = field(default_factory=dict)
    programs: dict = field(default_factory=dict)

    def code(self, m: int, s: int) -> int:
        return 2 * _pair(m, s) + 1

    def halts_by(self, m: int, s: int, t: int) -> bool:
        fn = self.programs.get(m)
        if fn is None:
            return False
        h = fn(s)
        return h is not None and h <= t

    def K(self, t: int) -> set:
        out = {2 * e for e, st in self.base.items() if st <= t}
        for m in self.programs:
            out.update(self.code(m, s) for s in range(t + 1) if self.halts_by(m, s, t))
        return out


@dataclass
class Sigma3Run:
    n: int
    standin: SyntheticHalting
    stages: int
    log: list = field(default_factory=list)  # (stage, action, prime)

    def spec_at(self, t: int, closed: bool = True) -> QGroupSpec:
        """G_n after stage t; unlisted primes are P0 when ``closed``, undetermined otherwise."""
        if t < 0:
            return QGroupSpec((), P0 if closed else None)
        K = self.standin.K(t)
        table = {nth_prime(i): INF for i in K}
        for s in range(t + 1):
            table.setdefault(nth_prime(self.standin.code(self.n, s)), 1)
        return QGroupSpec.make(table, P0 if closed else None)

    def target_at(self, t: int) -> QGroupSpec:
        """The fixed group G (P^inf from K, P^fin empty) as seen at stage t."""
        return QGroupSpec.make({nth_prime(i): INF for i in self.standin.K(t)}, P0)

    def expected_fin(self, t: int) -> set:
        """{p_(k_s) : phi_n(s) has not halted by t}, for s up to t."""
        return {
            nth_prime(self.standin.code(self.n, s))
            for s in range(t + 1)
            if not self.standin.halts_by(self.n, s, t)
        }

    def check(self, t: int) -> None:
        spec = self.spec_at(t)
        if spec.p_inf() != {nth_prime(i) for i in self.standin.K(t)}:
            raise AssertionError(f"stage {t}: P^inf differs from the promoted set")
        if spec.p_fin() != self.expected_fin(t):
            raise AssertionError(f"stage {t}: P^fin differs from the characterization")

    def trace(self) -> list:
        return [f"stage {s} action {a} prime {p}" for s, a, p in self.log]


def build_sigma3_reduction(n: int, standin: SyntheticHalting, stages: int) -> Sigma3Run:
    """Stage s makes p_(k_s) divide 1 and promotes p_i to every power for each newly seen i in K."""
    run = Sigma3Run(n, standin, stages)
    seen: set = set()
    for t in range(stages):
        run.log.append((t, "divide", nth_prime(standin.code(n, t))))
        for i in sorted(standin.K(t) - seen):
            run.log.append((t, "promote", nth_prime(i)))
        seen |= standin.K(t)
        run.check(t)
    return run


# -- the Pi_3 pseudo-Scott sentence ------------------------------------------------------


def _nondiv_item(params, i):
    primes, g = params
    return Forall(("h",), AtomNeq(("h", g), ((0, primes[i]), (1, -1))))


register_builder("nondiv", _nondiv_item, lambda p: (p[1],), PI1, bound=lambda p: len(p[0]))


def _s_family_item(params, k):
    (family,) = params
    primes = tuple(nth_prime(j) for j in family[k]) if k < len(family) else ()
    body = BigAnd("nondiv", (primes, "g"))
    return Oracle("nondiv-exists", (), (primes,), True, Exists(("g",), body))


register_builder("s-family", _s_family_item, lambda p: (), (2, 3, 2))


def _divisible_item(params, i):
    (primes,) = params
    p = primes[i]
    return Oracle("p-divisible", (), (p,), True, Forall(("g",), Exists(("h",), AtomEq(("h", "g"), ((0, p), (1, -1))))))


register_builder("divides-all", _divisible_item, lambda p: (), (3, 2, 2), bound=lambda p: len(p[0]))


def _tf_item(params, i):
    (x,) = params
    return Or((AtomEq((x,), ((0, 1),)), AtomNeq((x,), ((0, i + 2),))))


register_builder("torsion-free-at", _tf_item, lambda p: p, FIN)


def _rank_one_item(params, i):
    x, y = params
    # pairs (m, n) != (0, 0) with m >= 0, by growing max(|m|, |n|)
    r = 1
    while i >= 4 * r:
        i -= 4 * r
        r += 1
    pairs = [(r, n) for n in range(-r, r + 1)] + [(m, r) for m in range(r)] + [(m, -r) for m in range(1, r)]
    m, n = pairs[i]
    return AtomEq((x, y), tuple((j, e) for j, e in ((0, m), (1, n)) if e))


register_builder("rank-one", _rank_one_item, lambda p: p, FIN)


def subgroup_of_q_formula() -> Formula:
    """Nontrivial, abelian, torsion-free and of rank one."""
    return And((
        Exists(("x",), AtomNeq(("x",), ((0, 1),))),
        Forall(("x", "y"), AtomEq(("x", "y"), ((0, 1), (1, 1), (0, -1), (1, -1)))),
        Forall(("x",), BigAnd("torsion-free-at", ("x",))),
        Forall(("x", "y"), BigOr("rank-one", ("x", "y"))),
    ))


def pi3_pseudo_scott(X, state: PriorityState, stage: Optional[int] = None) -> Formula:
    """The Pi_3 sentence: each S_k leaves some element undivided, G is in Q, and P^inf contains X.

    ``X`` is the stagewise set the priority run built (or its snapshot).  The
    S_k conjunction ranges over every k; indices past the run see S_k empty.
    """
    snap = frozenset(X.at(state.stage if stage is None else stage)) if isinstance(X, StagedSet) else frozenset(X)
    if snap != frozenset(state.X):
        raise InputError("X does not match the set built by the priority run")
    top = max(state.S, default=-1)
    family = tuple(tuple(sorted(state.S.get(k, ()))) for k in range(top + 1))
    xs = tuple(nth_prime(i) for i in sorted(snap))
    return And((
        BigAnd("s-family", (family,)),
        subgroup_of_q_formula(),
        BigAnd("divides-all", (xs,)),
    ))


def g_x_spec(X) -> QGroupSpec:
    """The group with P^inf = {p_i : i in X} and P^fin empty."""
    return QGroupSpec.make({nth_prime(i): INF for i in X}, P0)


def _decide_nondiv(G, values, params) -> Optional[bool]:
    if not isinstance(G, QSub):
        return None
    (primes,) = params
    # g = 1 / prod p^k over the finite-class primes works unless some p divides everything
    return all(G.spec.cls_of(p) != INF for p in primes)


def _decide_divisible(G, values, params) -> Optional[bool]:
    if not isinstance(G, QSub):
        return None
    return G.spec.cls_of(params[0]) == INF


register_oracle("nondiv-exists", _decide_nondiv)
register_oracle("p-divisible", _decide_divisible)

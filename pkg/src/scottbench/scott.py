"""Builders for the generating-tuple formulas and (pseudo-)Scott sentences.

Every infinite junction is a registered builder, so built sentences
serialize to text and parse back.  Oracle wrappers mark Pi(1) pieces that
an exact decider can settle on hosts where the question is decidable
(finitely generated abelian groups, free nilpotent groups); the evaluator
only consults them when asked to.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import ClassificationViolation, InputError, UnsupportedError
from .evaluator import register_oracle
from .formula import (
    FIN,
    PI1,
    SIGMA1,
    And,
    AtomEq,
    AtomNeq,
    BigAnd,
    BigOr,
    Exists,
    Forall,
    Formula,
    Oracle,
    Or,
    Relativized,
    negate,
    register_builder,
    triple,
)
from .groups import BS1n, FgAbelian, FreeNilpotent, LamplighterD, ZWrZ, parse_spec
from .groups.base import ComputableGroup
from .intlin import IntMatrix, determinant, extends_to_basis, lattice_member, left_kernel, same_lattice
from .words import reduce_syllables, reduced_words


@lru_cache(maxsize=None)
def group(spec_text: str) -> ComputableGroup:
    """Parse a spec; free nilpotent groups of any rank are allowed here (iso-types of gamma_k)."""
    parts = spec_text.split()
    if len(parts) == 3 and parts[0] == "freenil" and parts[2].isdigit() and int(parts[2]) > 4:
        return FreeNilpotent(int(parts[1]), int(parts[2]), unbounded=True)
    return parse_spec(spec_text)


def spec_of(spec) -> str:
    return spec if isinstance(spec, str) else spec.spec_text()


def names(prefix: str, n: int) -> tuple:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


# ---------------------------------------------------------------------------
# designated tuples


def designated_tuple(G: ComputableGroup) -> tuple:
    """The generating tuple a Scott sentence speaks about.

    Abelian: free basis then every torsion element.  Free nilpotent of class
    >= 2: the generators then the basic commutators of weight >= 2 (a basis
    of the derived subgroup).  Otherwise the designated generators.
    """
    if isinstance(G, FgAbelian):
        free = G.generators()[: G.n]
        tors = [G.embed_torsion(t) for t in G.torsion_elements()] if G.orders else []
        return tuple(free) + tuple(tors)
    if isinstance(G, FreeNilpotent) and G.p >= 2:
        return tuple(G.basis_element(w) for w in G.basis())
    return G.generators()


def _nil_chain(G: FreeNilpotent) -> tuple:
    basis = G.basis()
    return sum(1 for w in basis if len(w) == 1), sum(1 for w in basis if len(w) >= 2)


# ---------------------------------------------------------------------------
# iso-type: <x> is isomorphic to G via the designated tuple


def _iso_item(params, i):
    spec, xs, designated = params
    G = group(spec)
    tup = _designated_elements(spec, designated)
    w = reduced_words(len(xs))[i]
    atom = AtomEq if G.evaluate_word(w, tup) == G.identity() else AtomNeq
    return atom(xs, w)


@lru_cache(maxsize=None)
def _designated_elements(spec: str, designated: tuple) -> tuple:
    G = group(spec)
    if not designated:
        return G.generators()
    return tuple(G.parse_element(t) for t in designated)


register_builder("iso-type", _iso_item, lambda p: p[1], FIN)


def iso_type_formula(spec, xs: Optional[tuple] = None, designated: Optional[tuple] = None) -> Formula:
    """The Pi(1) formula saying ``xs`` satisfy exactly the relations of the designated tuple."""
    spec = spec_of(spec)
    G = group(spec)
    tup = designated if designated is not None else G.generators()
    texts = () if designated is None else tuple(G.format_element(g) for g in designated)
    xs = tuple(xs) if xs is not None else names("x", len(tup))
    if len(xs) != len(tup):
        raise InputError(f"iso-type of {spec} needs {len(tup)} variables, got {len(xs)}")
    body = BigAnd("iso-type", (spec, xs, texts))
    return Oracle("iso-type", xs, (spec, texts), True, body)


# ---------------------------------------------------------------------------
# generation: y in <xs>


def _reach_item(params, i):
    xs, y = params
    w = reduced_words(len(xs))[i]
    return AtomEq(xs + (y,), w + ((len(xs), -1),))


register_builder("reach", _reach_item, lambda p: p[0] + (p[1],), FIN, modulo_class=SIGMA1)


def reach_formula(xs: tuple, y: str = "y") -> Formula:
    return Oracle("subgroup-member", tuple(xs) + (y,), (), True, BigOr("reach", (tuple(xs), y)))


def generating_set_sentence(spec, phi: Formula, xs: tuple, designated: Optional[tuple] = None) -> Formula:
    """(1) every tuple satisfying phi generates, and (2) some tuple satisfies phi and the iso-type."""
    xs = tuple(xs)
    if not phi.free <= set(xs):
        raise InputError(f"phi has free variables outside {xs}")
    s, p, d = triple(phi)
    if s > 2:
        raise ClassificationViolation("phi must be at most Sigma(2)")
    y = _fresh("y", xs)
    part1 = Forall(xs, Or((negate(phi), Forall((y,), reach_formula(xs, y)))))
    part2 = Exists(xs, And((phi, iso_type_formula(spec, xs, designated))))
    return And((part1, part2))


def _fresh(base: str, used) -> str:
    used = set(used)
    if base not in used:
        return base
    for i in itertools.count(1):
        if f"{base}{i}" not in used:
            return f"{base}{i}"


# ---------------------------------------------------------------------------
# abelian generating formula


def _value_rank(v: int) -> int:
    return 2 * abs(v) - (v > 0)


class _Matrices:
    """n x n integer matrices with determinant not +-1, by L1 norm, then lex with 0 < 1 < -1 < 2 < ..."""

    def __init__(self, n: int):
        self.n = n
        self.items: list = []
        self.norm = -1

    def __getitem__(self, i):
        while len(self.items) <= i:
            self.norm += 1
            level = []
            for entries in _compositions(self.norm, self.n * self.n):
                M = IntMatrix(self.n, self.n, entries)
                if abs(determinant(M)) != 1:
                    level.append(entries)
            level.sort(key=lambda e: tuple(_value_rank(v) for v in e))
            self.items.extend(IntMatrix(self.n, self.n, e) for e in level)
        return self.items[i]


def _compositions(total: int, slots: int):
    """Integer vectors of length ``slots`` with L1 norm ``total``."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, slots - 1):
            if a == 0:
                yield (0,) + rest
            else:
                yield (a,) + rest
                yield (-a,) + rest


@lru_cache(maxsize=None)
def matrices_det_not_unit(n: int) -> _Matrices:
    return _Matrices(n)


def _det_item(params, i):
    """forall zs: for every choice of torsion offsets, some row of M zs differs from xs."""
    xs, ys, zs = params
    n = len(xs)
    M = matrices_det_not_unit(n)[i]
    args = zs + xs + ys
    choices = itertools.product(range(len(ys)), repeat=n) if ys else [None]
    conj = []
    for choice in choices:
        rows = []
        for j in range(n):
            w = [(l, M[j, l]) for l in range(n) if M[j, l]]
            if choice is not None:
                w.append((2 * n + choice[j], -1))
            w.append((n + j, -1))
            rows.append(AtomNeq(args, reduce_syllables(w)))
        conj.append(Or(tuple(rows)))
    body = conj[0] if len(conj) == 1 else And(tuple(conj))
    return Forall(zs, body)


register_builder("det-not-unit", _det_item, lambda p: p[0] + p[1], PI1, modulo_class=PI1)


def _powers_item(params, i):
    (x,) = params
    return AtomNeq((x,), ((0, i + 2),))


register_builder("powers-nontrivial", _powers_item, lambda p: p, FIN, modulo_class=PI1)


def torsion_free_formula(xs: tuple) -> Formula:
    parts = tuple(Oracle("infinite-order", (x,), (), True, BigAnd("powers-nontrivial", (x,))) for x in xs)
    return parts[0] if len(parts) == 1 else And(parts)


def torsion_diagram(orders: tuple, ys: tuple) -> Formula:
    """Finitary atomic diagram of the finite abelian group listed (in enumeration order) by ``ys``."""
    T = FgAbelian(0, orders)
    elems = T.enumerate(T.order())
    index = {g: i for i, g in enumerate(elems)}
    parts = []
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            k = index[T.mul(g, h)]
            parts.append(AtomEq(ys, reduce_syllables([(i, 1), (j, 1), (k, -1)])))
            if i < j:
                parts.append(AtomNeq(ys, reduce_syllables([(i, 1), (j, -1)])))
    return And(tuple(parts))


def abelian_vars(n: int, orders: tuple, xprefix: str = "x", yprefix: str = "y") -> tuple:
    k = 1
    for o in orders:
        k *= o
    return names(xprefix, n), (names(yprefix, k) if orders else ())


def abelian_generating_formula(spec, xs: Optional[tuple] = None, ys: Optional[tuple] = None,
                               zprefix: str = "z") -> Formula:
    """chi(ys) and xs torsion-free and no det != +-1 matrix carries some zs onto xs modulo torsion.

    With trivial torsion the ys are omitted (the diagram of the trivial group
    only says y = 1).
    """
    G = group(spec_of(spec)) if not isinstance(spec, tuple) else FgAbelian(*spec)
    if not isinstance(G, FgAbelian):
        raise InputError("abelian_generating_formula needs an abelian spec")
    dx, dy = abelian_vars(G.n, G.orders)
    xs = tuple(xs) if xs is not None else dx
    ys = tuple(ys) if ys is not None else dy
    if len(xs) != G.n or len(ys) != len(dy):
        raise InputError("variable count does not match free rank and torsion size")
    parts = []
    if ys:
        parts.append(torsion_diagram(G.orders, ys))
    if xs:
        zs = names(zprefix, len(xs))
        parts.append(torsion_free_formula(xs))
        det = BigAnd("det-not-unit", (xs, ys, zs))
        parts.append(Oracle("abelian-basis", xs + ys, (), True, det))
    if not parts:
        return And(())
    return parts[0] if len(parts) == 1 else And(tuple(parts))


# ---------------------------------------------------------------------------
# derived subgroup guard and the polycyclic formula


def _commutator_item(params, i):
    g, level = params
    c = i + 1
    us = tuple(f"u{level}_{j + 1}" for j in range(2 * c))
    w = []
    for j in range(c):
        a, b = 2 * j + 1, 2 * j + 2
        w += [(a, 1), (b, 1), (a, -1), (b, -1)]
    w.append((0, -1))
    eq = AtomEq((g,) + us, reduce_syllables(w))
    if level > 1:
        eq = And(tuple(derived_guard(level - 1, u) for u in us) + (eq,))
    return Exists(us, eq)


register_builder("commutator-products", _commutator_item, lambda p: (p[0],), SIGMA1)


def derived_guard(level: int = 1, var: str = "g") -> Formula:
    """Sigma(1): ``var`` is a product of commutators (of elements of the previous term)."""
    if level < 1:
        raise InputError("derived level must be >= 1")
    body = BigOr("commutator-products", (var, level))
    return Oracle("derived-member", (var,), (level,), True, body)


def polycyclic_generating_formula(spec, chain: list, prefixes: Optional[list] = None) -> Formula:
    """Generating-tuple formula built down a derived series with abelian factors.

    ``chain[i]`` is ``(free rank, torsion orders)`` of the i-th derived factor;
    the last entry describes the (abelian) last nonzero term.  Level i uses
    variables ``x{i}_j`` / ``y{i}_j`` (plain ``x``/``y`` at level 0).
    """
    if not chain:
        raise InputError("derived chain must be nonempty")
    depth = len(chain) - 1
    parts = []
    for i, (n, orders) in enumerate(chain):
        xp, yp = (("x", "y") if i == 0 else (f"x{i}_", f"y{i}_")) if prefixes is None else prefixes[i]
        xs, ys = abelian_vars(n, tuple(orders), xp, yp)
        f = abelian_generating_formula(tuple([n, tuple(orders)]), xs, ys, zprefix=f"z{i}_" if i else "z")
        if i < depth:
            f = Relativized("g", derived_guard(i + 1, "g"), f, "modulo")
            f = Oracle("quotient-basis", xs + ys, (i + 1,), True, f)
        if i > 0:
            f = Relativized("g", derived_guard(i, "g"), f, "plain")
            f = Oracle("derived-basis", xs + ys, (i,), True, f)
            members = tuple(derived_guard(i, v) for v in xs + ys)
            f = And(members + (f,))
        parts.append(f)
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def chain_vars(chain: list) -> tuple:
    out = ()
    for i, (n, orders) in enumerate(chain):
        xp, yp = ("x", "y") if i == 0 else (f"x{i}_", f"y{i}_")
        xs, ys = abelian_vars(n, tuple(orders), xp, yp)
        out += xs + ys
    return out


def nilpotent_chain(G: FreeNilpotent) -> list:
    """Derived factors of N_{p,m} for p <= 3: Z^m, then the free abelian derived subgroup."""
    if G.p > 3:
        raise UnsupportedError("derived chain only computed for class <= 3")
    ab, der = _nil_chain(G)
    return [(ab, ())] if der == 0 else [(ab, ()), (der, ())]


# ---------------------------------------------------------------------------
# lamplighter, Z wr Z and BS(1,n)


def _shift_item(params, i):
    a, t, s = params
    e = i + 2
    # a^t != a^(s^e)
    return AtomNeq((a, t, s), reduce_syllables([(1, -1), (0, 1), (1, 1), (2, -e), (0, -1), (2, e)]))


register_builder("lamp-shift", _shift_item, lambda p: p, FIN, modulo_class=PI1)


class _SumVectors:
    """Finite-support exponent vectors k, by weight sum|k_i| + sum|i|, then lex.

    ``d > 0``: entries are residues 1..d-1 and at least two are nonzero.
    ``d == 0``: nonzero integers, at least two nonzero entries, or a single
    entry outside {0, 1, -1}.
    """

    def __init__(self, d: int):
        self.d = d
        self.items: list = []
        self.weight = 1

    def _values(self, cap):
        if self.d:
            return [v for v in range(1, self.d) if v <= cap]
        return [v for a in range(1, cap + 1) for v in (a, -a)]

    def _level(self, W):
        out = []

        def rec(prev_pos, budget, acc):
            if budget == 0:
                if len(acc) >= 2 or (self.d == 0 and len(acc) == 1 and abs(acc[0][1]) >= 2):
                    out.append(tuple(acc))
                return
            for pos in range(prev_pos + 1, budget + 1):
                for v in self._values(budget - abs(pos)):
                    rec(pos, budget - abs(pos) - abs(v), acc + [(pos, v)])

        rec(-W - 1, W, [])
        out.sort()
        return out

    def __getitem__(self, i):
        while len(self.items) <= i:
            self.weight += 1
            self.items.extend(self._level(self.weight))
        return self.items[i]


@lru_cache(maxsize=None)
def sum_vectors(d: int) -> _SumVectors:
    return _SumVectors(d)


def _sums_item(params, i):
    d, a, t, b = params
    k = sum_vectors(d)[i]
    w = []
    for pos, v in k:
        w += [(1, -pos), (2, v), (1, pos)]
    w.append((0, -1))
    return AtomNeq((a, t, b), reduce_syllables(w))


register_builder("lamp-sums", _sums_item, lambda p: p[1:], FIN, modulo_class=PI1)


def _wreath_formula(spec, d: int) -> Formula:
    a, t = "a", "t"
    return And((
        iso_type_formula(spec, (a, t)),
        Forall(("s",), BigAnd("lamp-shift", (a, t, "s"))),
        Forall(("b",), BigAnd("lamp-sums", (d, a, t, "b"))),
    ))


def lamplighter_formula(spec) -> Formula:
    """phi(a, t) for L_d.

    Sound only for prime d: for composite d the ring Z/d[t, 1/t] has units
    with several terms (1 + 2t squares to 1 when d = 4), and the third
    conjunct then fails on the standard generators.
    """
    G = group(spec_of(spec))
    if not isinstance(G, LamplighterD):
        raise InputError("lamplighter_formula needs a lamplighter spec")
    return _wreath_formula(G.spec_text(), G.d)


def zwrz_formula(spec="zwrz") -> Formula:
    G = group(spec_of(spec))
    if not isinstance(G, ZWrZ):
        raise InputError("zwrz_formula needs the zwrz spec")
    return _wreath_formula(G.spec_text(), 0)


class _Roots:
    """Exponents i with |i| >= 2 and gcd(i, n) = 1: 2, -2, 3, -3, ... (skipping the rest)."""

    def __init__(self, n):
        self.n = n
        self.items: list = []
        self.next = 2

    def __getitem__(self, i):
        while len(self.items) <= i:
            if gcd(self.next, self.n) == 1:
                self.items += [self.next, -self.next]
            self.next += 1
        return self.items[i]


@lru_cache(maxsize=None)
def roots(n: int) -> _Roots:
    return _Roots(n)


def _roots_item(params, i):
    n, a, b = params
    return AtomNeq((a, b), ((1, roots(n)[i]), (0, -1)))


register_builder("bs-roots", _roots_item, lambda p: p[1:], FIN, modulo_class=PI1)


def bs1n_formula(spec) -> Formula:
    G = group(spec_of(spec))
    if not isinstance(G, BS1n):
        raise InputError("bs1n_formula needs a bs1n spec")
    return And((
        iso_type_formula(G.spec_text(), ("a", "t")),
        Forall(("b",), BigAnd("bs-roots", (G.n, "a", "b"))),
    ))


# ---------------------------------------------------------------------------
# N_{p,inf}


def gamma_k(p: int, k: int, ys: Optional[tuple] = None) -> Formula:
    """<ys> is N_{p,k} and ys extend to a basis modulo the derived subgroup."""
    if p not in (1, 2, 3):
        raise UnsupportedError("gamma_k supported for p in {1, 2, 3}")
    if k < 1:
        raise InputError("k must be >= 1")
    ys = tuple(ys) if ys is not None else names("x", k)
    zs = tuple(f"w{i + 1}" for i in range(k))
    det = Relativized("g", derived_guard(1, "g"), BigAnd("det-not-unit", (ys, (), zs)), "modulo")
    return And((
        iso_type_formula(f"freenil {p} {k}", ys),
        Oracle("ab-basis", ys, (), True, det),
    ))


def _extend_item(params, i):
    (p,) = params
    k = i + 1
    xs = names("x", k)
    inner = BigOr("extend-to", (p, k))
    return Forall(xs, Or((negate(gamma_k(p, k, xs)), Forall(("y",), inner))))


def _extend_to_item(params, i):
    p, k = params
    l = k + 1 + i
    xs = names("x", l)
    return Exists(xs[k:], And((gamma_k(p, l, xs), reach_formula(xs, "y"))))


register_builder("extend", _extend_item, lambda p: (), (4, 3, 3))
register_builder("extend-to", _extend_to_item, lambda p: names("x", p[1]) + ("y",), (2, 3, 2))


def group_axioms() -> Formula:
    """Associativity, identity and inverses; their words are freely trivial."""
    x, y, z = "x", "y", "z"
    return Forall((x, y, z), And((
        AtomEq((x, y, z), ()),  # (x y) z (x (y z))^-1
        AtomEq((x,), ()),  # x 1 x^-1
        AtomEq((x,), ()),  # x x^-1
    )))


def infinite_generating_sentence(p: int) -> Formula:
    """Group axioms, some x1 satisfies gamma_1, and every gamma_k tuple extends."""
    if p not in (1, 2, 3):
        raise UnsupportedError("p must be 1, 2 or 3")
    return And((
        group_axioms(),
        Exists(("x1",), gamma_k(p, 1, ("x1",))),
        BigAnd("extend", (p,)),
    ))


def cohopfian_sentence(spec) -> Formula:
    G = group(spec_of(spec))
    xs = names("x", len(G.generators()))
    return generating_set_sentence(G.spec_text(), iso_type_formula(G.spec_text(), xs), xs)


# ---------------------------------------------------------------------------
# one entry point per group


@dataclass(frozen=True)
class ScottPlan:
    spec: str
    vars: tuple
    designated: tuple
    phi: Formula
    sentence: Formula


def generating_formula(spec) -> tuple:
    """``(phi, variables, designated tuple)`` for the families with a d-Sigma(2) sentence."""
    G = group(spec_of(spec))
    spec = G.spec_text()
    if isinstance(G, FgAbelian):
        xs, ys = abelian_vars(G.n, G.orders)
        return abelian_generating_formula(spec, xs, ys), xs + ys, designated_tuple(G)
    if isinstance(G, FreeNilpotent):
        if G.p == 1:
            xs = names("x", G.m)
            return abelian_generating_formula((G.m, ()), xs, ()), xs, G.generators()
        chain = nilpotent_chain(G)
        return polycyclic_generating_formula(spec, chain), chain_vars(chain), designated_tuple(G)
    if isinstance(G, LamplighterD):
        return lamplighter_formula(spec), ("a", "t"), G.generators()
    if isinstance(G, ZWrZ):
        return zwrz_formula(spec), ("a", "t"), G.generators()
    if isinstance(G, BS1n):
        return bs1n_formula(spec), ("a", "t"), G.generators()
    raise UnsupportedError(f"no generating formula for {spec}")


def scott_sentence(spec) -> ScottPlan:
    G = group(spec_of(spec))
    phi, xs, tup = generating_formula(G)
    designated = None if tup == G.generators() else tup
    sentence = generating_set_sentence(G.spec_text(), phi, xs, designated)
    return ScottPlan(G.spec_text(), xs, tuple(tup), phi, sentence)


# ---------------------------------------------------------------------------
# exact deciders for Oracle nodes


def _ab_rows(H: FgAbelian, values) -> list:
    return [list(v.free) + list(v.tors) for v in values]


def _relation_lattice(H: FgAbelian, values) -> list:
    k = len(values)
    width = H.n + len(H.orders)
    rows = _ab_rows(H, values)
    rows += [[0] * H.n + [o if j == i else 0 for j in range(len(H.orders))] for i, o in enumerate(H.orders)]
    if width == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    kernel = left_kernel(IntMatrix.from_rows(rows))
    return [list(v[:k]) for v in kernel if any(v[:k])]


def _decide_iso(H, values, params):
    spec, texts = params
    G = group(spec)
    if isinstance(H, FgAbelian) and isinstance(G, FgAbelian):
        tup = _designated_elements(spec, texts)
        return same_lattice(_relation_lattice(H, values), _relation_lattice(G, tup))
    return None


def _decide_member(H, values, params):
    *xs, y = values
    if isinstance(H, FgAbelian):
        rows = _ab_rows(H, xs)
        rows += [[0] * H.n + [o if j == i else 0 for j in range(len(H.orders))] for i, o in enumerate(H.orders)]
        rows = [r for r in rows if any(r)]
        return lattice_member(rows, _ab_rows(H, [y])[0])
    return None


def _decide_infinite_order(H, values, params):
    return H.element_order(values[0]) is None


def _decide_abelian_basis(H, values, params):
    if not isinstance(H, FgAbelian):
        return None
    tors = set(H.embed_torsion(t) for t in H.torsion_elements()) if H.orders else {H.identity()}
    n = len(values) - (len(tors) if H.orders else 0)
    xs, ys = values[:n], values[n:]
    if H.orders and (len(set(ys)) != len(ys) or set(ys) != tors):
        return None
    if n > H.n:
        return False
    if n == 0:
        return True
    return extends_to_basis(IntMatrix.from_rows([list(x.free) for x in xs]))


def _decide_derived(H, values, params):
    (level,) = params
    g = values[0]
    if isinstance(H, FgAbelian):
        return g == H.identity()
    if isinstance(H, FreeNilpotent) and level == 1:
        return H.in_derived(g)
    return None


def _decide_ab_basis(H, values, params):
    if isinstance(H, FreeNilpotent):
        rows = [H.abelianization(v) for v in values]
        width = max([len(r) for r in rows] + [len(values)])
        rows = [list(r) + [0] * (width - len(r)) for r in rows]
        return extends_to_basis(IntMatrix.from_rows(rows))
    if isinstance(H, FgAbelian) and not H.orders:
        if len(values) > H.n:
            return False
        return extends_to_basis(IntMatrix.from_rows([list(v.free) for v in values]))
    return None


def _decide_quotient_basis(H, values, params):
    """``values`` extend to a basis of the free abelian quotient by the derived subgroup."""
    (level,) = params
    if level != 1:
        return None
    if isinstance(H, FreeNilpotent):
        rows = [list(H.abelianization(v)) for v in values]
        width = H.m if H.m is not None else max([len(r) for r in rows] + [0])
        rows = [r + [0] * (width - len(r)) for r in rows]
        return len(rows) <= width and extends_to_basis(IntMatrix.from_rows(rows))
    return None


def _decide_derived_basis(H, values, params):
    """``values`` (all in the derived subgroup) extend to a basis of it; class <= 3 keeps it free abelian."""
    (level,) = params
    if level != 1 or not isinstance(H, FreeNilpotent) or H.m is None or H.p > 3:
        return None
    if not all(H.in_derived(v) for v in values):
        return None
    words = [w for w in H.basis() if len(w) > 1]
    rows = [[H.exponent(v, w) for w in words] for v in values]
    if len(rows) > len(words):
        return False
    return extends_to_basis(IntMatrix.from_rows(rows))


register_oracle("iso-type", _decide_iso)
register_oracle("subgroup-member", _decide_member)
register_oracle("infinite-order", _decide_infinite_order)
register_oracle("abelian-basis", _decide_abelian_basis)
register_oracle("derived-member", _decide_derived)
register_oracle("ab-basis", _decide_ab_basis)
register_oracle("quotient-basis", _decide_quotient_basis)
register_oracle("derived-basis", _decide_derived_basis)

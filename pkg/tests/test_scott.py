from __future__ import annotations

from math import gcd

import pytest

from oracles import minors_gcd
from scottbench import scott
from scottbench.errors import ClassificationViolation, InputError, UnsupportedError
from scottbench.evaluator import REFUTED, UNKNOWN, evaluate
from scottbench.formula import DSigma, Exists, Pi, classify, parse
from scottbench.groups import FgAbelian, parse_spec


def ev(f, G, env, B=60, J=60, oracles=False):
    return evaluate(f, G, B, J, env, oracles=oracles)


def test_iso_type_formula():
    Z = FgAbelian(1)
    f = scott.iso_type_formula("fgabelian 1")
    assert classify(f) == Pi(1)
    (x,) = Z.generators()
    assert ev(f, Z, {"x1": x}, B=1, J=200).outcome is UNKNOWN
    v = ev(f, Z, {"x1": Z.identity()}, B=1, J=2)
    assert v.refuted and "atom (neq [x1] x1) fails" in v.witness
    with pytest.raises(InputError):
        scott.iso_type_formula("fgabelian 1", ("x", "y"))


def test_generating_set_sentence():
    phi = scott.abelian_generating_formula("fgabelian 1")
    s = scott.generating_set_sentence("fgabelian 1", phi, ("x1",))
    assert classify(s) == DSigma(2)
    Z, Z2 = parse_spec("fgabelian 1"), parse_spec("fgabelian 2")
    assert ev(s, Z, {}, B=20, J=20, oracles=True).outcome is not REFUTED
    v = ev(s, Z2, {}, B=20, J=20, oracles=True)
    assert v.refuted
    with pytest.raises(ClassificationViolation):
        scott.generating_set_sentence("fgabelian 1", parse("(forall [y] (exists [z] (forall [w] (eq [x1 y z w] x1))))"),
                                      ("x1",))


def test_abelian_formula():
    Z2 = parse_spec("fgabelian 2")
    f = scott.abelian_generating_formula("fgabelian 2")
    e1, e2 = Z2.generators()
    assert ev(f, Z2, {"x1": e1, "x2": e2}, oracles=True).outcome is not REFUTED
    assert ev(f, Z2, {"x1": e1, "x2": e2}).outcome is not REFUTED
    bad = {"x1": Z2.power(e1, 2), "x2": e2}
    assert minors_gcd([[2, 0], [0, 1]]) == 2
    v = ev(f, Z2, bad, B=30, J=100)
    assert v.refuted and v.witness[1].startswith("bigand det-not-unit[")
    Z = parse_spec("fgabelian 1")
    v = ev(scott.abelian_generating_formula("fgabelian 1"), Z, {"x1": Z.identity()}, B=1, J=1)
    assert v.refuted


def test_torsion_diagram_fixes_finite_part():
    G = parse_spec("fgabelian 1 2")
    phi, xs, tup = scott.generating_formula("fgabelian 1 2")
    assert xs == ("x1", "y1", "y2")
    assert ev(phi, G, dict(zip(xs, tup)), oracles=True).outcome is not REFUTED
    swapped = dict(zip(xs, (tup[0], tup[2], tup[1])))
    assert ev(phi, G, swapped, B=5, J=5).refuted


def test_polycyclic_formula():
    N = parse_spec("freenil 2 2")
    phi, xs, tup = scott.generating_formula("freenil 2 2")
    assert classify(phi) == DSigma(1)
    x, y, c = tup
    assert ev(phi, N, dict(zip(xs, tup)), B=30, J=30, oracles=True).outcome is not REFUTED
    bad = dict(zip(xs, (N.power(x, 2), y, c)))
    assert ev(phi, N, bad, B=30, J=30, oracles=True).refuted
    # chain of length one: the abelian formula
    phi1, xs1, _ = scott.generating_formula("freenil 1 2")
    assert phi1 == scott.abelian_generating_formula((2, ()), xs1, ())


def test_lamplighter_formula():
    L = parse_spec("lamplighter 2")
    f = scott.lamplighter_formula("lamplighter 2")
    assert classify(f) == Pi(1)
    a, t = L.generators()
    assert ev(f, L, {"a": a, "t": t}, B=40, J=40).outcome is UNKNOWN
    v = ev(f, L, {"a": a, "t": L.power(t, 2)}, B=40, J=40)
    assert v.refuted
    at = L.mul(L.mul(L.inv(t), a), t)
    assert ev(f, L, {"a": L.mul(a, at), "t": t}, B=40, J=40).refuted


def test_zwrz_formula():
    G = parse_spec("zwrz")
    f = scott.zwrz_formula()
    assert classify(f) == Pi(1)
    a, t = G.generators()
    assert ev(f, G, {"a": a, "t": t}, B=30, J=30).outcome is UNKNOWN
    assert ev(f, G, {"a": G.power(a, 2), "t": t}, B=30, J=30).refuted
    assert ev(f, G, {"a": a, "t": G.power(t, 2)}, B=30, J=30).refuted
    with pytest.raises(InputError):
        scott.zwrz_formula("lamplighter 2")


def test_bs1n_formula():
    G = parse_spec("bs1n 2")
    f = scott.bs1n_formula("bs1n 2")
    assert classify(f) == Pi(1)
    a, t = G.generators()
    assert ev(f, G, {"a": a, "t": t}, B=40, J=40).outcome is UNKNOWN
    v = ev(f, G, {"a": G.power(a, 3), "t": t}, B=40, J=40)
    assert v.refuted
    assert ev(f, G, {"a": G.power(a, 2), "t": t}, B=40, J=40).outcome is UNKNOWN


def test_gamma_and_infinite_sentence():
    assert classify(scott.gamma_k(2, 2)) == Pi(1)
    assert classify(scott.infinite_generating_sentence(1)) == Pi(3)
    with pytest.raises(UnsupportedError):
        scott.gamma_k(4, 1)
    N = parse_spec("freenil 2 2")
    x, y = N.generators()
    g2 = scott.gamma_k(2, 2)
    assert ev(g2, N, {"x1": x, "x2": y}, B=20, J=20, oracles=True).outcome is not REFUTED
    assert minors_gcd([[1, 0], [1, 2]]) == 2
    bad = {"x1": x, "x2": N.mul(x, N.power(y, 2))}
    assert ev(g2, N, bad, B=20, J=20, oracles=True).refuted
    Z = parse_spec("fgabelian 1")
    g1 = scott.gamma_k(1, 1)
    assert ev(g1, Z, {"x1": Z.generators()[0]}, B=20, J=20, oracles=True).outcome is not REFUTED
    assert ev(g1, Z, {"x1": Z.power(Z.generators()[0], 2)}, B=20, J=20, oracles=True).refuted


def test_cohopfian_sentence():
    assert classify(scott.cohopfian_sentence("fgabelian 0 3")) == DSigma(2)
    C3 = parse_spec("fgabelian 0 3")
    assert ev(scott.cohopfian_sentence("fgabelian 0 3"), C3, {}, B=3, J=30).outcome is not REFUTED
    # Z is not co-Hopfian: x1 = 2 has the iso-type of a generator but does not reach 1
    Z = parse_spec("fgabelian 1")
    s = scott.cohopfian_sentence("fgabelian 1")
    part1 = s.parts[0]
    assert ev(part1, Z, {}, B=5, J=5, oracles=True).refuted
    assert isinstance(s.parts[1], Exists)


@pytest.mark.parametrize("d", [4, 6])
def test_lamplighter_single_entry_coprime(d):
    # a tuple (a^c, t) passes the iso-type conjunct exactly when gcd(c, d) = 1
    L = parse_spec(f"lamplighter {d}")
    a, t = L.generators()
    iso = scott.iso_type_formula(f"lamplighter {d}", ("a", "t"))
    for c in range(1, d):
        v = ev(iso, L, {"a": L.power(a, c), "t": t}, B=1, J=300)
        assert v.refuted == (gcd(c, d) != 1), c


def test_lamplighter_formula_fails_for_composite_d():
    L = parse_spec("lamplighter 4")
    a, t = L.generators()
    f = scott.lamplighter_formula("lamplighter 4")
    b = L.mul(a, L.mul(L.inv(t), L.mul(L.power(a, 2), t)))
    v = ev(f.parts[2].body, L, {"a": a, "t": t, "b": b}, B=1, J=10)
    assert v.refuted
    assert ev(f, L, {"a": a, "t": t}, B=160, J=10).refuted

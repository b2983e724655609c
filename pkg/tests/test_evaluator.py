from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import FiniteAbelianModel, truth
from scottbench import scott
from scottbench.errors import InputError, MonotonicityViolation, UnboundVariable
from scottbench.evaluator import CONFIRMED, REFUTED, UNKNOWN, evaluate, eval_monotone_check
from scottbench.formula import And, AtomEq, AtomNeq, Exists, Forall, Or, parse
from scottbench.groups import FgAbelian, parse_spec
from scottbench.words import reduce_syllables

VARS = ("x", "y")


def tree_of(f):
    if isinstance(f, (AtomEq, AtomNeq)):
        return ("eq" if isinstance(f, AtomEq) else "neq", f.args, f.word)
    if isinstance(f, (And, Or)):
        return ("and" if isinstance(f, And) else "or", [tree_of(p) for p in f.parts])
    return ("exists" if isinstance(f, Exists) else "forall", f.vars, tree_of(f.body))


def sentences():
    word = st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3).filter(bool)), min_size=1, max_size=3)
    atom = st.builds(lambda c, w: c(VARS, reduce_syllables(w)), st.sampled_from([AtomEq, AtomNeq]), word)

    def extend(inner):
        parts = st.lists(inner, max_size=2).map(tuple)
        v = st.sampled_from([("x",), ("y",)])
        return st.one_of(st.builds(And, parts), st.builds(Or, parts),
                         st.builds(Exists, v, inner), st.builds(Forall, v, inner))

    body = st.recursive(atom, extend, max_leaves=4)
    return body.map(lambda f: Forall(VARS, f))


ORDERS = [(2,), (3,), (4,), (2, 2), (6,)]


@settings(max_examples=150, deadline=None)
@given(sentences(), st.sampled_from(ORDERS), st.integers(1, 8))
def test_sound_and_complete_on_finite_groups(f, orders, small_b):
    G = FgAbelian(0, orders)
    want = truth(FiniteAbelianModel(orders), tree_of(f), {})
    full = evaluate(f, G, G.order(), 0)
    assert full.outcome is (CONFIRMED if want else REFUTED)
    part = evaluate(f, G, small_b, 0)
    assert part.outcome in (UNKNOWN, full.outcome)


def test_infinite_groups_resolve_only_soundly():
    Z = parse_spec("fgabelian 1")
    assert evaluate(parse("(exists [x] (neq [x] x))"), Z, 5, 0).outcome is CONFIRMED
    assert evaluate(parse("(forall [x] (eq [x] x^2))"), Z, 5, 0).outcome is REFUTED
    assert evaluate(parse("(forall [x] (neq [x] x^2))"), Z, 50, 0).outcome is REFUTED
    # true in Z, but no finite fragment can show it
    assert evaluate(parse("(forall [x] (or (eq [x] x) (neq [x] x^-1)))"), Z, 50, 0).outcome is UNKNOWN
    assert evaluate(parse("(forall [x y] (eq [x y] x.y.x^-1.y^-1))"), Z, 50, 0).outcome is UNKNOWN


def test_witness_trace():
    Z = parse_spec("fgabelian 1")
    v = evaluate(parse("(exists [x y] (and (neq [x] x) (eq [x y] x.y)))"), Z, 10, 0)
    assert v.confirmed
    text = v.render()
    assert text.startswith("Confirmed\nbounds B=10 J=0\nwitness:")
    assert "exists x = " in text
    L = parse_spec("lamplighter 2")
    v = evaluate(scott.torsion_free_formula(("x",)), L, 30, 30, {"x": L.generators()[0]})
    assert v.refuted
    assert v.witness == ("bigand powers-nontrivial[0]", "atom (neq [x] x^2) fails")


def test_iso_type_needs_enough_juncts():
    G = parse_spec("bs1n 2")
    a, b = G.generators()
    f = scott.iso_type_formula("bs1n 2")
    assert evaluate(f, G, 30, 30, {"x1": a, "x2": b}).outcome is UNKNOWN
    assert evaluate(f, G, 30, 30, {"x1": b, "x2": a}).outcome is UNKNOWN
    v = evaluate(f, G, 5, 300, {"x1": b, "x2": a})
    assert v.refuted and v.witness[0].startswith("bigand iso-type[")
    assert eval_monotone_check(f, G, [5, 5, 5], [30, 300, 400], {"x1": b, "x2": a}) == (5, 300)


def test_oracles_only_when_enabled():
    N = parse_spec("freenil 2 2")
    x, y = N.generators()
    f = scott.torsion_free_formula(("x",))
    assert evaluate(f, N, 20, 20, {"x": x}).outcome is UNKNOWN
    assert evaluate(f, N, 20, 20, {"x": x}, oracles=True).outcome is CONFIRMED
    assert evaluate(f, N, 20, 20, {"x": N.identity()}, oracles=True).outcome is REFUTED


def test_unbound_and_bad_bounds():
    Z = parse_spec("fgabelian 1")
    with pytest.raises(UnboundVariable):
        evaluate(parse("(eq [x] x)"), Z, 5, 0)
    with pytest.raises(InputError):
        evaluate(parse("(and)"), Z, 0, 0)
    with pytest.raises(InputError):
        eval_monotone_check(parse("(and)"), Z, [5, 3], [0, 0])


def test_deterministic():
    G = parse_spec("lamplighter 2")
    phi, xs, tup = scott.generating_formula("lamplighter 2")
    env = dict(zip(xs, tup))
    runs = {evaluate(phi, G, 20, 20, env).render() for _ in range(3)}
    assert len(runs) == 1


def test_monotone_check_detects_nothing_on_sound_evaluator():
    G = FgAbelian(0, (2, 2))
    f = parse("(forall [x] (eq [x] x^2))")
    assert eval_monotone_check(f, G, [1, 2, 4], [0, 0, 0]) == (4, 0)
    assert issubclass(MonotonicityViolation, AssertionError)

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottbench import scott
from scottbench.errors import ClassificationViolation, InputError, ParseError, UnknownBuilder
from scottbench.words import reduce_syllables
from scottbench.formula import (
    And,
    AtomEq,
    AtomNeq,
    BigAnd,
    BigOr,
    DSigma,
    Exists,
    FINITARY,
    Forall,
    Or,
    Pi,
    Sigma,
    classify,
    juncts,
    negate,
    parse,
    pretty,
    register_builder,
    relativize,
    serialize,
    triple,
)

VARS = ("x", "y", "z")


def atoms():
    word = st.lists(st.tuples(st.integers(0, 2), st.integers(-2, 2).filter(bool)), min_size=1, max_size=4)
    return st.builds(lambda cls, w: cls(VARS, reduce_syllables(w)), st.sampled_from([AtomEq, AtomNeq]), word)


def formulas():
    def extend(inner):
        parts = st.lists(inner, max_size=3).map(tuple)
        vs = st.lists(st.sampled_from(VARS), min_size=1, max_size=2, unique=True).map(tuple)
        return st.one_of(
            st.builds(And, parts), st.builds(Or, parts),
            st.builds(Exists, vs, inner), st.builds(Forall, vs, inner),
        )

    return st.recursive(atoms(), extend, max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_serialize_round_trip(f):
    assert parse(serialize(f)) == f
    assert parse(pretty(f, width=20)) == f


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_negation_is_an_involution_and_dualizes(f):
    assert negate(negate(f)) == f
    s, p, _ = triple(f)
    assert triple(negate(f))[:2] == (p, s)
    if s != p:
        assert classify(negate(f)) == classify(f).dual()


def test_classification_examples():
    at = parse("(eq [x y] x.y.x^-1.y^-1)")
    assert classify(at) == FINITARY
    assert classify(Exists(("x",), at)) == Sigma(1)
    assert classify(Forall(("y",), Exists(("x",), at))) == Pi(2)
    assert classify(And((Exists(("x",), at), Forall(("x",), at)))) == DSigma(1)
    assert classify(scott.torsion_free_formula(("x",))) == Pi(1)
    assert classify(scott.reach_formula(("x",))) == Sigma(1)
    assert classify(scott.derived_guard(1)) == Sigma(1)
    assert classify(scott.iso_type_formula("bs1n 2")) == Pi(1)
    big = BigOr("powers-nontrivial", ("x",), (("negate",),))
    assert classify(big) == Sigma(1)
    assert classify(Forall(("x",), big)) == Pi(2)


def test_empty_junctions():
    assert classify(And(())) == FINITARY
    assert parse("(and)") == And(()) and parse("(or)") == Or(())


def test_lazy_junctions():
    f = BigAnd("powers-nontrivial", ("x",))
    items = list(juncts(f, 4))
    assert len(items) == 4
    assert all(isinstance(i, AtomNeq) for i in items)
    neg = negate(f)
    assert isinstance(neg, BigOr)
    assert [negate(i) for i in items] == list(juncts(neg, 4))


def test_declared_class_is_checked():
    register_builder("test-liar", lambda params, i: Exists(("u",), AtomEq(("u",), ((0, i + 1),))),
                     lambda params: (), (0, 0, 0))
    with pytest.raises(ClassificationViolation):
        classify(BigAnd("test-liar", ()))


def test_relativize():
    guard = scott.derived_guard(1, "g")
    body = Forall(("x",), parse("(eq [x] x^2)"))
    r = relativize(body, guard)
    assert r.free == frozenset()
    assert parse(serialize(r)) == r
    with pytest.raises(ClassificationViolation):
        relativize(body, Forall(("h",), parse("(eq [g h] g.h.g^-1.h^-1)")))
    with pytest.raises(InputError):
        relativize(body, parse("(eq [g h] g.h)"))
    with pytest.raises(InputError):
        relativize(body, guard, "sideways")


@pytest.mark.parametrize("text", [
    "", "(eq [x] )", "(eq [x] x y)", "(frob [x] x)", "(and (eq [x] x)", "(exists x (eq [x] x))",
    "(eq [x] x))", "(eq [1x] x)",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_unknown_builder():
    with pytest.raises(UnknownBuilder):
        parse('(bigand "no-such-builder" [])')

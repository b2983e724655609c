from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottbench.errors import InputError, UnsupportedError
from scottbench.evaluator import REFUTED, evaluate
from scottbench.formula import Pi, classify
from scottbench.priority import PriorityInstance, run
from scottbench.qgroups import (
    INF,
    P0,
    QGroupSpec,
    SyntheticHalting,
    build_sigma3_reduction,
    factor,
    g_x_spec,
    iso_compare,
    nth_prime,
    pi3_pseudo_scott,
    prime_index,
)


def sieve(n):
    flags = [True] * n
    flags[0] = flags[1] = False
    for i in range(2, n):
        if flags[i]:
            for j in range(i * i, n, i):
                flags[j] = False
    return [i for i, f in enumerate(flags) if f]


def test_prime_indexing():
    primes = sieve(2000)
    assert [nth_prime(i) for i in range(len(primes))] == primes
    assert all(prime_index(p) == i for i, p in enumerate(primes))


@given(st.integers(1, 10 ** 6))
def test_factor(n):
    prod = 1
    for p, e in factor(n):
        assert p in sieve(p + 1)
        prod *= p ** e
    assert prod == n


def test_membership():
    two = QGroupSpec.parse("qsub inf=2")
    assert two.member(Fraction(1, 8)) is True
    assert two.member(Fraction(1, 3)) is False
    nine = QGroupSpec.parse("qsub fin=3:2")
    assert nine.member(Fraction(1, 9)) is True
    assert nine.member(Fraction(1, 27)) is False
    assert nine.member(Fraction(5, 3)) is True and nine.member(7) is True


def test_indeterminate_membership():
    spec = QGroupSpec.parse("qsub inf=2 default=?")
    assert spec.member(Fraction(1, 4)) is True
    assert spec.member(Fraction(1, 3)) is None
    assert spec.member(Fraction(1, 12)) is None
    assert QGroupSpec.parse("qsub zero=3 default=?").member(Fraction(1, 6)) is False
    with pytest.raises(UnsupportedError):
        iso_compare(spec, spec)


@pytest.mark.parametrize("text", [
    "qsub default=P0",
    "qsub inf=2,3 fin=5:2,7:1 zero=11 default=P0",
    "qsub fin=3:1 default=inf",
    "qsub inf=5 default=?",
])
def test_text_round_trip(text):
    spec = QGroupSpec.parse(text)
    assert spec.text() == text
    assert QGroupSpec.parse("family " + text) == spec


@pytest.mark.parametrize("text", ["", "qsub inf=4", "qsub fin=3:x", "qsub bogus=2", "qsub 2", "group inf=2"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        QGroupSpec.parse(text)


def test_iso_compare_examples():
    a = QGroupSpec.parse("qsub inf=2 fin=3:1")
    assert iso_compare(a, a)
    assert iso_compare(a, QGroupSpec.parse("qsub inf=2"))
    assert not iso_compare(a, QGroupSpec.parse("qsub inf=2,5 fin=3:1"))
    assert not iso_compare(a, QGroupSpec.parse("qsub inf=2 default=inf"))
    assert not iso_compare(a, QGroupSpec.parse("qsub inf=2"), star_tolerance=0)


def test_group_operations():
    G = QGroupSpec.parse("qsub inf=2 fin=3:1").group()
    els = G.enumerate(40)
    assert all(G.spec.member(q) for q in els)
    assert len(set(els)) == 40
    assert G.divides(2, Fraction(1, 3)) and not G.divides(3, Fraction(1, 3))
    assert G.parse_element(G.format_element(Fraction(-5, 12))) == Fraction(-5, 12)


# -- Sigma_3 reduction -------------------------------------------------------------------


def test_sigma3_total_program():
    H = SyntheticHalting(base={1: 2}, programs={0: lambda s: s})
    r = build_sigma3_reduction(0, H, 25)
    for t in (0, 5, 24):
        assert r.spec_at(t).p_fin() == set()
        assert iso_compare(r.spec_at(t), r.target_at(t), 0)
    assert r.spec_at(-1).table == ()
    assert r.trace()[0] == f"stage 0 action divide prime {nth_prime(H.code(0, 0))}"


def test_sigma3_divergent_program():
    H = SyntheticHalting(programs={0: lambda s: None})
    r = build_sigma3_reduction(0, H, 25)
    sizes = [len(r.spec_at(t).p_fin()) for t in range(25)]
    assert sizes == list(range(1, 26))
    assert iso_compare(r.spec_at(2), r.target_at(2), 3)
    assert not iso_compare(r.spec_at(3), r.target_at(3), 3)


# -- the Pi_3 pseudo-Scott sentence ------------------------------------------------------------


def _priority(D, W):
    return run(PriorityInstance.simple(D, W, 30))


def test_pi3_sentence():
    state = _priority({0: 0, 3: 1}, {0: {n: 0 for n in range(3, 20)}})
    X = state.X
    f = pi3_pseudo_scott(X, state)
    assert classify(f) == Pi(3)
    G = g_x_spec(X).group()
    assert evaluate(f, G, 20, 20, oracles=True).outcome is not REFUTED
    # one more divisible prime, inside some S_k
    extra = min(state.S[0])
    H = QGroupSpec.make({**{nth_prime(i): INF for i in X}, nth_prime(extra): INF}, P0).group()
    v = evaluate(f, H, 20, 20, oracles=True)
    assert v.refuted and v.witness[:2] == ("and[0]", "bigand s-family[0]")
    with pytest.raises(InputError):
        pi3_pseudo_scott(X | {99}, state)


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.integers(0, 6), st.integers(0, 10), max_size=4))
def test_g_x_never_refuted(D):
    state = _priority(D, {0: {n: 1 for n in range(40)}, 1: {n: 2 for n in range(0, 40, 3)}})
    f = pi3_pseudo_scott(state.X, state)
    assert evaluate(f, g_x_spec(state.X).group(), 10, 10, oracles=True).outcome is not REFUTED

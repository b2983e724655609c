from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottbench import reductions
from scottbench.errors import InputError, SearchFailure
from scottbench.groups import FreeNilpotent, parse_spec
from scottbench.reductions import (
    SigmaTwoApprox,
    StagedSet,
    build_cof_reduction,
    build_three_state,
    check_monotone,
    residual_embed,
)

LIMIT_CLASS = {(False, False): "hat", (True, False): "base", (True, True): "product"}
FAMILIES = ["freenil 2 2", "lamplighter 2", "bs1n 2", "fgabelian 2"]


def test_approx_and_staged_sets():
    a = SigmaTwoApprox.eventually([(True, True), (False, False)], (True, False))
    assert [a.at(0, s) for s in range(4)] == [(True, True), (False, False), (True, False), (True, False)]
    with pytest.raises(InputError):
        SigmaTwoApprox(lambda n, s: False, lambda n, s: True).at(0, 0)
    W = StagedSet.from_schedule({3: 0, 1: 5})
    assert W.at(0) == {3} and W.at(5) == {1, 3}


@pytest.mark.parametrize("spec", FAMILIES)
def test_keep_building(spec):
    st_ = build_three_state(0, SigmaTwoApprox.eventually([], (True, False)), parse_spec(spec), 40)
    assert {b for _, b, _ in st_.log} == {"keep-building"}
    assert st_.variant == parse_spec(spec) and st_.classification() == "base"
    assert len(st_.real) == 40


@pytest.mark.parametrize("spec", FAMILIES)
def test_apply_phi_every_stage(spec):
    st_ = build_three_state(0, SigmaTwoApprox.eventually([], (False, False)), parse_spec(spec), 15)
    assert {b for _, b, _ in st_.log} == {"apply-phi"}
    assert st_.phi_count == 15 and st_.classification() == "hat"
    st_.check_colimit()


@pytest.mark.parametrize("spec", FAMILIES)
def test_introduce_after_alternation(spec):
    prefix = [(True, True) if s % 2 else (True, False) for s in range(10)]
    st_ = build_three_state(0, SigmaTwoApprox.eventually(prefix, (True, True)), parse_spec(spec), 30)
    branches = [b for _, b, _ in st_.log]
    assert branches.count("introduce") == 5
    assert st_.collapses == 4
    assert "collapse" not in branches[10:]
    assert st_.classification() == "product"
    assert st_.alive is not None


limits = st.sampled_from(sorted(LIMIT_CLASS))
pairs = st.sampled_from([(False, False), (True, False), (True, True)])


@settings(max_examples=25, deadline=None)
@given(st.lists(pairs, max_size=8), limits, st.sampled_from(["fgabelian 1", "lamplighter 2", "bs1n 2"]))
def test_classification_stabilizes(prefix, limit, spec):
    st_ = build_three_state(3, SigmaTwoApprox.eventually(prefix, limit), parse_spec(spec), len(prefix) + 6)
    settled = st_.classifications[len(prefix) + 2:]
    assert set(settled) == {LIMIT_CLASS[limit]}


def test_trace_and_diagram_format():
    st_ = build_three_state(0, SigmaTwoApprox.eventually([(False, False)], (True, True)), parse_spec("fgabelian 1"), 3)
    assert st_.trace() == [
        "stage 0 branch apply-phi facts 1",
        "stage 1 branch introduce facts 3",
        "stage 2 branch keep-building facts %d" % len(st_.facts),
    ]
    assert st_.diagram()[0] == "0*0=0"
    with pytest.raises(AssertionError):
        check_monotone({(0, 0): 0}, {})


def test_unsupported_family():
    with pytest.raises(InputError):
        build_three_state(0, SigmaTwoApprox.eventually([], (True, True)), parse_spec("qsub inf=2"), 2)


# -- residual maps -------------------------------------------------------------------


def _vec(g, m):
    v = [0] * m
    for w, c in g.coords:
        v[w[0]] += c
    return v


def test_residual_abelian():
    G = FreeNilpotent(1, 4, unbounded=True)
    x = [G.gen(i) for i in range(4)]
    S = [G.identity(), x[3], G.mul(x[0], x[1]), G.power(x[3], 2), G.mul(x[2], G.inv(x[3]))]
    psi = residual_embed(1, 4, S)
    imgs = [_vec(psi(g), 4) for g in S]
    assert all(v[3] == 0 for v in imgs)
    assert len({tuple(v) for v in imgs}) == len(S)
    # a homomorphism of free abelian groups is linear
    a, b = S[2], S[3]
    assert _vec(psi(G.mul(a, b)), 4) == [p + q for p, q in zip(_vec(psi(a), 4), _vec(psi(b), 4))]


def test_residual_identity_set_takes_first_candidate():
    G = FreeNilpotent(2, 3, unbounded=True)
    psi = residual_embed(2, 3, [G.identity()])
    assert psi.tried == 1 and psi.image == G.identity()


def test_residual_class_two():
    G = FreeNilpotent(2, 3, unbounded=True)
    x, y, z = (G.gen(i) for i in range(3))
    S = [z, G.commutator(x, z), G.mul(x, z), G.commutator(y, z), G.mul(G.power(y, 2), G.inv(z))]
    psi = residual_embed(2, 3, S)
    reductions.verify_residual(psi, S)
    assert psi.tried <= 200
    for g in S:
        for h in S:
            assert psi(G.mul(g, h)) == G.mul(psi(g), psi(h))


def test_residual_errors():
    G = FreeNilpotent(2, 3, unbounded=True)
    with pytest.raises(InputError):
        residual_embed(2, 2, [G.identity()])
    with pytest.raises(InputError):
        residual_embed(1, 3, [])
    with pytest.raises(SearchFailure):
        residual_embed(2, 3, [G.identity(), G.gen(2)], bound=1)


# -- COF --------------------------------------------------------------------------------


@pytest.mark.parametrize("p", [1, 2])
def test_cof_empty(p):
    st_ = build_cof_reduction(0, StagedSet(lambda s: ()), p, 12)
    assert st_.collapsed == [] and st_.survivors == list(range(12))
    assert {b for _, b, _ in st_.log} == {"build"}
    assert st_.classification() == f"N_{{{p},inf}}"


@pytest.mark.parametrize("p", [1, 2])
def test_cof_evens(p):
    st_ = build_cof_reduction(0, StagedSet(lambda s: range(0, s + 1, 2)), p, 16, checkpoints=(8, 16))
    assert st_.survivors == list(range(1, 16, 2))
    assert st_.snapshots == {8: (4, f"N_{{{p},inf}}"), 16: (8, f"N_{{{p},inf}}")}


def test_cof_cofinite():
    st_ = build_cof_reduction(0, StagedSet(lambda s: range(2, s + 1)), 2, 16)
    assert st_.survivors == [0, 1]
    assert st_.classification() == "N_{2,5}"
    assert st_.residual_calls == 14


def test_cof_bad_p():
    with pytest.raises(InputError):
        build_cof_reduction(0, StagedSet(lambda s: ()), 3, 2)

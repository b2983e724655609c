from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scottbench.errors import InputError
from scottbench.priority import PriorityInstance, StagedSet, interval, interval_of, run


def test_intervals():
    assert interval(0) == range(0, 1)
    assert interval(1) == range(1, 3)
    assert interval(4) == range(10, 15) and len(interval(4)) == 5
    with pytest.raises(InputError):
        interval(-1)


@given(st.integers(0, 5000))
def test_intervals_partition(n):
    i = interval_of(n)
    assert n in interval(i)
    assert len(interval(i)) == i + 1
    assert interval(i + 1).start == interval(i).stop


def test_empty_instance():
    state = run(PriorityInstance.simple({}, {}, 30))
    assert state.X == set() and all(not s for s in state.S.values())
    assert state.log == []


def test_single_r_action():
    state = run(PriorityInstance.simple({2: 0}, {}, 20))
    assert state.X == {3}
    assert state.trace() == ["stage 2 action R_2 element 3"]


def test_q_grows_without_bound():
    inst = PriorityInstance(StagedSet(lambda s: ()), lambda k: StagedSet(lambda s: range(s + 1)) if k == 0 else
                            StagedSet(lambda s: ()), 200, width=5)
    state = run(inst)
    assert len(state.S[0]) >= 10
    assert not state.X
    # one element per interval i > 0
    assert sorted(interval_of(n) for n in state.S[0]) == list(range(1, len(state.S[0]) + 1))


def test_blocked_elements_push_r_up():
    # Q_0 claims 1 (the least element of I_1) before R_1 sees 1 enter D
    inst = PriorityInstance.simple({1: 5}, {0: {1: 0}}, 10)
    state = run(inst)
    assert state.S[0] == {1}
    assert state.X == {2}


schedules = st.dictionaries(st.integers(0, 12), st.integers(0, 30), max_size=6)
w_family = st.dictionaries(st.integers(0, 4), st.dictionaries(st.integers(0, 120), st.integers(0, 30), max_size=25),
                           max_size=4)


@settings(max_examples=60, deadline=None)
@given(schedules, w_family)
def test_invariants(D, W):
    stages = 60
    inst = PriorityInstance.simple(D, W, stages)
    state = run(inst)  # checks disjointness and the blocking bound at every stage
    for k, Sk in state.S.items():
        assert not Sk & state.X
        assert Sk <= set(W.get(k, {}))
        assert all(interval_of(n) > k for n in Sk)
    hit = {interval_of(n) for n in state.X}
    assert hit <= set(D)
    for i, t in D.items():
        if t + i < stages:
            assert i in hit
    assert all(len(state.X & set(interval(i))) <= 1 for i in range(15))

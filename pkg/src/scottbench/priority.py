"""Finite-injury construction of a set X and sets S_k inside W_k avoiding X.

Requirements, highest priority first: R_0 < Q_0 < R_1 < Q_1 < ...

R_i   X meets the interval I_i exactly when i enters D.
Q_k   S_k is an infinite subset of W_k disjoint from X.

Q_k takes at most one element from each interval I_i with i > k, so at most
i elements of I_i are ever blocked and R_i always finds a free one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import InputError
from .reductions import StagedSet

__all__ = ["interval", "interval_of", "PriorityInstance", "PriorityState", "run", "StagedSet"]


def interval(i: int) -> range:
    if i < 0:
        raise InputError("interval index must be nonnegative")
    return range(i * (i + 1) // 2, (i + 1) * (i + 2) // 2)


def interval_of(n: int) -> int:
    """The i with n in I_i."""
    if n < 0:
        raise InputError("negative number")
    i = 0
    while (i + 1) * (i + 2) // 2 <= n:
        i += 1
    return i


@dataclass
class PriorityInstance:
    D: StagedSet
    W: Callable  # k -> StagedSet
    stages: int
    width: Optional[int] = None  # requirements simulated; None: indices up to s at stage s

    @classmethod
    def simple(cls, D: dict, W: dict, stages: int) -> "PriorityInstance":
        """``D`` maps i to its entry stage; ``W`` maps k to such a schedule."""
        empty = StagedSet(lambda s: ())
        Ws = {k: StagedSet.from_schedule(v) for k, v in W.items()}
        return cls(StagedSet.from_schedule(D), lambda k: Ws.get(k, empty), stages)


@dataclass
class PriorityState:
    X: set = field(default_factory=set)
    S: dict = field(default_factory=dict)  # k -> set
    blocked: dict = field(default_factory=dict)  # n -> k of the Q requirement holding it
    used: set = field(default_factory=set)  # (k, i): Q_k has spent its element of I_i
    stage: int = 0
    log: list = field(default_factory=list)  # (stage, requirement, element)

    def trace(self) -> list:
        return [f"stage {s} action {r} element {n}" for s, r, n in self.log]

    def check(self, D_now: frozenset) -> None:
        for k, Sk in self.S.items():
            if Sk & self.X:
                raise AssertionError(f"S_{k} meets X at stage {self.stage}")
        per: dict = {}
        for n in self.blocked:
            per[interval_of(n)] = per.get(interval_of(n), 0) + 1
        for i, c in per.items():
            if c > i:
                raise AssertionError(f"{c} elements of I_{i} blocked")
        for n in self.X:
            if interval_of(n) not in D_now:
                raise AssertionError(f"X meets I_{interval_of(n)} but {interval_of(n)} is not in D")


def run(inst: PriorityInstance, check: bool = True) -> PriorityState:
    """Simulate ``inst.stages`` stages; requirements with index up to s are active at stage s.

    ``inst.width`` caps the indices simulated, for instances where the
    injected sets only involve finitely many requirements.
    """
    st = PriorityState()
    for s in range(inst.stages):
        st.stage = s
        D = inst.D.at(s)
        top = s + 1 if inst.width is None else min(s + 1, inst.width)
        for idx in range(top):
            _act_r(st, idx, D)
            _act_q(st, idx, inst.W(idx).at(s))
        if check:
            st.check(D)
    return st


def _act_r(st: PriorityState, i: int, D: frozenset) -> None:
    if i not in D:
        return
    I = interval(i)
    if any(n in st.X for n in I):
        return
    free = [n for n in I if n not in st.blocked]
    if not free:
        raise AssertionError(f"R_{i} starved")
    st.X.add(free[0])
    st.log.append((st.stage, f"R_{i}", free[0]))


def _act_q(st: PriorityState, k: int, W: frozenset) -> None:
    Sk = st.S.setdefault(k, set())
    for n in sorted(W):
        if n in st.X or n in Sk:
            continue
        i = interval_of(n)
        if i <= k or (k, i) in st.used:
            continue
        Sk.add(n)
        st.blocked.setdefault(n, k)
        st.used.add((k, i))
        st.log.append((st.stage, f"Q_{k}", n))
        return

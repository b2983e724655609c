"""Sound three-valued evaluation of formulas on finite fragments of a group.

Quantifiers range over the first B enumerated elements; a universal (or an
existential's failure) is only conclusive when the fragment is the whole
finite group.  Infinite junctions are scanned up to J juncts.  Confirmed and
Refuted are therefore always true statements about the whole group.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .errors import InputError, MonotonicityViolation, UnboundVariable
from .formula import (
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
    QuotEq,
    QuotNeq,
    Relativized,
    serialize,
)
from .groups.base import ComputableGroup


class Outcome(Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"

    def flip(self) -> "Outcome":
        return {Outcome.CONFIRMED: Outcome.REFUTED, Outcome.REFUTED: Outcome.CONFIRMED}.get(self, self)


CONFIRMED, REFUTED, UNKNOWN = Outcome.CONFIRMED, Outcome.REFUTED, Outcome.UNKNOWN


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: tuple = ()
    B: int = 0
    J: int = 0

    @property
    def refuted(self) -> bool:
        return self.outcome is REFUTED

    @property
    def confirmed(self) -> bool:
        return self.outcome is CONFIRMED

    def render(self) -> str:
        if self.outcome is UNKNOWN:
            lines = ["Unknown (never refuted)"]
        else:
            lines = [self.outcome.value]
        lines.append(f"bounds B={self.B} J={self.J}")
        if self.witness:
            lines.append("witness:")
            lines.extend("  " + step for step in self.witness)
        return "\n".join(lines)


@dataclass
class Fragment:
    group: ComputableGroup
    B: int
    elements: list = field(init=False)
    closed: bool = field(init=False)

    def __post_init__(self):
        if self.B < 1:
            raise InputError("fragment size must be at least 1")
        self.elements = self.group.enumerate(self.B)
        order = self.group.order()
        self.closed = order is not None and len(self.elements) == order


# Exact deciders consulted for Oracle nodes when enabled.
_ORACLES: dict = {}


def register_oracle(name: str, decide: Callable) -> None:
    """``decide(group, values, params) -> bool | None`` (None: cannot decide here)."""
    _ORACLES[name] = decide


def oracle_names() -> list:
    return sorted(_ORACLES)


Result = tuple  # (Outcome, trace tuple)


class Evaluator:
    def __init__(self, group: ComputableGroup, B: int, J: int, oracles: bool = False):
        if J < 0:
            raise InputError("junction bound must be nonnegative")
        self.group = group
        self.frag = Fragment(group, B)
        self.B, self.J = B, J
        self.oracles = oracles
        self._memo: dict = {}

    # -- entry points ---------------------------------------------------------
    def eval(self, f: Formula, env: Optional[dict] = None) -> Verdict:
        env = dict(env or {})
        missing = sorted(f.free - set(env))
        if missing:
            raise UnboundVariable(f"unbound variable(s): {', '.join(missing)}")
        for v in env.values():
            self.group.check(v)
        outcome, trace = self._eval(f, env)
        if outcome is UNKNOWN:
            trace = ()
        return Verdict(outcome, tuple(_render_step(s) for s in trace), self.B, self.J)

    def fmt(self, g) -> str:
        return self.group.format_element(g)

    # -- recursion ----------------------------------------------------------------
    def _eval(self, f: Formula, env: dict) -> Result:
        key = (id(f), tuple(env[v] for v in sorted(f.free)))
        hit = self._memo.get(key)
        if hit is not None and hit[0] is f:
            return hit[1]
        res = self._dispatch(f, env)
        self._memo[key] = (f, res)
        return res

    def _dispatch(self, f: Formula, env: dict) -> Result:
        G = self.group
        if isinstance(f, (AtomEq, AtomNeq)):
            value = G.evaluate_word(f.word, [env.get(a) if a in f.free else G.identity() for a in f.args])
            holds = (value == G.identity()) == isinstance(f, AtomEq)
            return (CONFIRMED if holds else REFUTED), ((f, holds),)
        if isinstance(f, (QuotEq, QuotNeq)):
            # the only candidate for the bound variable is the value of the word
            value = G.evaluate_word(f.word, [env.get(a) if a in f.free else G.identity() for a in f.args])
            out, trace = self._eval(f.guard, {f.var: value})
            if isinstance(f, QuotNeq):
                out = out.flip()
            if out is UNKNOWN:
                return UNKNOWN, ()
            return out, (f"{'qneq' if isinstance(f, QuotNeq) else 'qeq'} {f.var} = {self.fmt(value)}",) + trace
        if isinstance(f, And):
            return self._junction(f.parts, env, conj=True, label="and", exhausted=True)
        if isinstance(f, Or):
            return self._junction(f.parts, env, conj=False, label="or", exhausted=True)
        if isinstance(f, (BigAnd, BigOr)):
            conj = isinstance(f, BigAnd)
            items = []
            exhausted = False
            for i in range(self.J):
                item = f.item(i)
                if item is None:
                    exhausted = True
                    break
                items.append(item)
            else:
                exhausted = f.item(self.J) is None
            label = ("bigand " if conj else "bigor ") + f.builder
            return self._junction(items, env, conj=conj, label=label, exhausted=exhausted)
        if isinstance(f, (Exists, Forall)):
            return self._quantifier(f, env)
        if isinstance(f, Relativized):
            return self._eval(f.expanded, env)
        if isinstance(f, Oracle):
            decide = _ORACLES.get(f.name)
            if self.oracles and decide is not None:
                value = decide(G, tuple(env[a] for a in f.args), f.params)
                if value is not None:
                    out = CONFIRMED if value == f.positive else REFUTED
                    args = ", ".join(f"{a}={self.fmt(env[a])}" for a in f.args)
                    return out, (f"oracle {f.name}({args}) = {value}",)
            return self._eval(f.body, env)
        raise InputError(f"not a formula: {f!r}")

    def _junction(self, parts, env, conj: bool, label: str, exhausted: bool) -> Result:
        decisive = REFUTED if conj else CONFIRMED
        unknown = False
        for i, part in enumerate(parts):
            out, trace = self._eval(part, env)
            if out is decisive:
                return decisive, (f"{label}[{i}]",) + trace
            if out is UNKNOWN:
                unknown = True
        if unknown or not exhausted:
            return UNKNOWN, ()
        return decisive.flip(), (f"{label}: all {len(parts)} juncts {decisive.flip().value.lower()}",)

    def _quantifier(self, f, env) -> Result:
        existential = isinstance(f, Exists)
        decisive = CONFIRMED if existential else REFUTED
        unknown = False
        head = "exists" if existential else "forall"
        inner = dict(env)
        for values in itertools.product(self.frag.elements, repeat=len(f.vars)):
            inner.update(zip(f.vars, values))
            out, trace = self._eval(f.body, inner)
            if out is decisive:
                binding = ", ".join(f"{v} = {self.fmt(g)}" for v, g in zip(f.vars, values))
                return decisive, (f"{head} {binding}",) + trace
            if out is UNKNOWN:
                unknown = True
        if unknown or not self.frag.closed:
            return UNKNOWN, ()
        n = len(self.frag.elements) ** len(f.vars)
        return decisive.flip(), (f"{head} {' '.join(f.vars)}: all {n} assignments in the closed group",)


def _render_step(step) -> str:
    if isinstance(step, str):
        return step
    f, holds = step
    return f"atom {serialize(f)} {'holds' if holds else 'fails'}"


def evaluate(f: Formula, group: ComputableGroup, B: int, J: int, env: Optional[dict] = None,
             oracles: bool = False) -> Verdict:
    return Evaluator(group, B, J, oracles).eval(f, env)


def eval_monotone_check(f: Formula, group: ComputableGroup, Bs, Js, env: Optional[dict] = None,
                        oracles: bool = False) -> Optional[tuple]:
    """Evaluate at increasing bounds; resolved verdicts must never change.

    Returns the first ``(B, J)`` at which the verdict was resolved, or None.
    """
    Bs, Js = list(Bs), list(Js)
    if len(Bs) != len(Js):
        raise InputError("need as many fragment sizes as junction bounds")
    if any(b2 < b1 for b1, b2 in zip(Bs, Bs[1:])) or any(j2 < j1 for j1, j2 in zip(Js, Js[1:])):
        raise InputError("bounds must be nondecreasing")
    first = None
    settled = None
    for B, J in zip(Bs, Js):
        v = evaluate(f, group, B, J, env, oracles)
        if settled is not None and v.outcome is not settled:
            raise MonotonicityViolation(f"verdict changed from {settled.value} to {v.outcome.value} at B={B} J={J}")
        if v.outcome is not UNKNOWN and settled is None:
            settled, first = v.outcome, (B, J)
    return first

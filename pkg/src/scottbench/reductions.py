"""Stage-by-stage constructions behind the index-set lower bounds.

A construction builds the atomic diagram of a group ``G_n`` one name at a
time, keeping every name realized in a concrete "current variant" group.
Switching variants is done by maps that are homomorphisms and injective on
the named elements, so no recorded fact is ever contradicted.

Synthetic inputs stand in for the Sigma_2 approximations and c.e. sets of
the real reductions, since the real ones are not computable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import InputError, SearchFailure
from .groups import (
    BS1n,
    BS1nWr,
    Colimit,
    Endo,
    FgAbelian,
    FreeNilpotent,
    LamplighterD,
    NilElt,
    PZElt,
    ProductZ,
    WrElt,
    ZdWrZ2,
    ZWrZ,
    ZWrZ2,
    default_endo,
    direct_limit,
)
from .groups.base import ComputableGroup

__all__ = [
    "SigmaTwoApprox", "StageState", "ThreeState", "build_three_state", "Endo", "direct_limit",
    "residual_embed", "ResidualMap", "CofState", "build_cof_reduction", "StagedSet",
]


# ---------------------------------------------------------------------------
# inputs


@dataclass
class SigmaTwoApprox:
    """Stagewise approximations to Sigma_2 sets S2 <= S1 (limit: in for cofinitely many stages)."""

    s1: Callable  # (n, s) -> bool
    s2: Callable

    def at(self, n: int, s: int) -> tuple:
        a, b = bool(self.s1(n, s)), bool(self.s2(n, s))
        if b and not a:
            raise InputError(f"approximation has n={n} in S2 but not S1 at stage {s}")
        return a, b

    @classmethod
    def eventually(cls, prefix: list, limit: tuple) -> "SigmaTwoApprox":
        """Follows ``prefix`` (a list of (in S1, in S2) pairs) then stays at ``limit`` for every n."""
        prefix = [tuple(p) for p in prefix]

        def pick(s):
            return prefix[s] if s < len(prefix) else tuple(limit)

        return cls(lambda n, s: pick(s)[0], lambda n, s: pick(s)[1])


@dataclass
class StagedSet:
    """A c.e. set given by its finite stage approximations ``W_0 <= W_1 <= ...``."""

    stage_fn: Callable  # s -> iterable of naturals

    def at(self, s: int) -> frozenset:
        return frozenset(self.stage_fn(s))

    @classmethod
    def from_schedule(cls, schedule: dict) -> "StagedSet":
        """``schedule[k]`` is the stage at which k is enumerated."""
        return cls(lambda s: (k for k, t in schedule.items() if t <= s))


# ---------------------------------------------------------------------------
# diagrams


@dataclass
class StageState:
    """Names realized in a current variant, plus the multiplication facts seen so far."""

    variant: ComputableGroup
    real: list = field(default_factory=list)  # name -> element of the variant
    facts: dict = field(default_factory=dict)  # (i, j) -> k meaning name_i * name_j = name_k
    stage: int = 0
    log: list = field(default_factory=list)  # (stage, branch, fact count)
    verified: set = field(default_factory=set)  # facts checked since the last remap

    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.real)}

    def add_name(self, g) -> int:
        idx = self.index()
        if g in idx:
            raise AssertionError("element already named")
        self.real.append(g)
        new = len(self.real) - 1
        idx[g] = new
        V = self.variant
        for j in range(new + 1):
            for a, b in ((new, j), (j, new)):
                prod = V._mul(self.real[a], self.real[b])
                k = idx.get(prod)
                if k is not None:
                    self.facts[(a, b)] = k
        return new

    def remap(self, f: Callable, variant: ComputableGroup) -> None:
        new = [f(g) for g in self.real]
        if len(set(new)) != len(new):
            raise AssertionError("variant change is not injective on the named elements")
        self.real = new
        self.variant = variant
        self.verified.clear()

    def check_consistent(self) -> None:
        """Every recorded fact and every inequality holds in the current variant.

        Facts already checked are skipped until the next remap changes the
        realization.
        """
        V = self.variant
        if len(set(self.real)) != len(self.real):
            raise AssertionError(f"stage {self.stage}: two names realized by one element")
        for key, k in self.facts.items():
            if key in self.verified:
                continue
            a, b = key
            if V._mul(self.real[a], self.real[b]) != self.real[k]:
                raise AssertionError(f"stage {self.stage}: fact {a}*{b}={k} fails in {V.spec_text()}")
            self.verified.add(key)

    def trace(self) -> list:
        return [f"stage {s} branch {b} facts {k}" for s, b, k in self.log]

    def diagram(self) -> list:
        return [f"{a}*{b}={k}" for (a, b), k in sorted(self.facts.items())]


def check_monotone(before: dict, after: dict) -> None:
    for key, k in before.items():
        if after.get(key) != k:
            raise AssertionError(f"fact {key} -> {k} lost or changed")


# ---------------------------------------------------------------------------
# three-state constructions


class Family:
    """What a three-state construction needs from a group family."""

    def __init__(self, base: ComputableGroup):
        self.base = base
        self.endo = default_endo(base)
        self.product = self._product()

    def _product(self) -> ComputableGroup:
        raise NotImplementedError

    def include(self, g):
        """Base -> product variant."""
        raise NotImplementedError

    def new_element(self):
        raise NotImplementedError

    def collapse(self, x, N: int):
        """Product variant -> base, sending the new element to a power ``N`` of a fixed element."""
        raise NotImplementedError

    def magnitude(self, x) -> int:
        raise NotImplementedError


class NilpotentFamily(Family):
    """N -> N x Z; collapse c to b^N for a central b of infinite order."""

    name = "nilpotent"

    def _product(self):
        return ProductZ(self.base)

    def central(self):
        G = self.base
        if isinstance(G, FreeNilpotent):
            return G.central_witness()
        if isinstance(G, FgAbelian) and G.n:
            return G.generators()[0]
        raise InputError("no central element of infinite order")

    def include(self, g):
        return PZElt(g, 0)

    def new_element(self):
        return PZElt(self.base.identity(), 1)

    def collapse(self, x: PZElt, N: int):
        return self.base._mul(x.g, self.base.power(self.central(), N * x.e))

    def magnitude(self, x: PZElt) -> int:
        g = x.g
        if isinstance(g, NilElt):
            m = max((abs(e) for _, e in g.coords), default=0)
        else:
            m = max((abs(e) for e in g.free), default=0)
        return max(m, abs(x.e))


class WreathFamily(Family):
    """A wr Z -> A wr Z^2 with new shift s; collapse s to t^N (positions (x, y) -> x + N y)."""

    name = "wreath"

    def _product(self):
        G = self.base
        return ZdWrZ2(G.d) if isinstance(G, LamplighterD) else ZWrZ2()

    def include(self, g: WrElt):
        return WrElt(tuple(((p[0], 0), v) for p, v in g.base), (g.shift[0], 0))

    def new_element(self):
        return WrElt((), (0, 1))

    def collapse(self, x: WrElt, N: int):
        G = self.base
        acc: dict = {}
        for (px, py), v in x.base:
            acc[px + N * py] = acc.get(px + N * py, 0) + v
        return G.make(acc, x.shift[0] + N * x.shift[1])

    def magnitude(self, x: WrElt) -> int:
        vals = [abs(c) for p, _ in x.base for c in p] + [abs(c) for c in x.shift]
        return max(vals, default=0)


class BSFamily(Family):
    """BS(1,n) -> (B^Z) x| Z^2 with new shift s; collapse s to b^N (position y scales by n^(N y))."""

    name = "bs"

    def _product(self):
        return BS1nWr(self.base.n)

    def include(self, g):
        base = (((0,), g.q),) if g.q else ()
        return WrElt(base, (g.k, 0))

    def new_element(self):
        return WrElt((), (0, 1))

    def collapse(self, x: WrElt, N: int):
        G = self.base
        q = sum((v * G._scale(N * p[0]) for p, v in x.base), start=0)
        return G.make(q, x.shift[0] + N * x.shift[1])

    def magnitude(self, x: WrElt) -> int:
        vals = [abs(p[0]) for p, _ in x.base] + [abs(c) for c in x.shift]
        vals += [abs(v.numerator) + v.denominator for _, v in x.base]
        return max(vals, default=0)


def family_for(G: ComputableGroup) -> Family:
    if isinstance(G, (FreeNilpotent, FgAbelian)):
        return NilpotentFamily(G)
    if isinstance(G, (LamplighterD, ZWrZ)):
        return WreathFamily(G)
    if isinstance(G, BS1n):
        return BSFamily(G)
    raise InputError(f"no three-state construction for {G.spec_text()}")


class ThreeState(StageState):
    """Stage state of a three-state construction."""

    family: Family
    phi_count: int = 0
    alive: Optional[int] = None  # name of the introduced element while it is uncollapsed
    collapses: int = 0
    classifications: list

    def classification(self) -> str:
        """Guess for the limit from the current stage: hat (colimit), base, or product."""
        if not self.log:
            return "base"
        branch = self.log[-1][1]
        if branch == "apply-phi":
            return "hat"
        if self.alive is not None:
            return "product"
        return "base"

    def colimit(self) -> Colimit:
        return direct_limit(self.family.base, self.family.endo)

    def colimit_elements(self) -> list:
        """Names as colimit elements: a name realized by g after k applications is (k, g)."""
        C = self.colimit()
        return [C.canonical(self.phi_count, g) for g in self.real]

    def check_colimit(self) -> None:
        """Facts also hold in the direct limit (only meaningful in the base variant)."""
        C = self.colimit()
        els = self.colimit_elements()
        if len(set(els)) != len(els):
            raise AssertionError("colimit realization not injective")
        for (a, b), k in self.facts.items():
            if C._mul(els[a], els[b]) != els[k]:
                raise AssertionError(f"fact {a}*{b}={k} fails in the direct limit")


def _next_unnamed(state: StageState, V: ComputableGroup):
    named = set(state.real)
    count = len(named) + 1
    while True:
        for g in V.enumerate(count):
            if g not in named:
                return g
        count *= 2


def build_three_state(n: int, approx: SigmaTwoApprox, base: ComputableGroup, stages: int,
                      check: bool = True) -> ThreeState:
    """Run ``stages`` steps of the three-way construction for index ``n``.

    Each stage takes one action chosen by the approximation at that stage,
    then names one more element of the current variant:
      n not in S1_s        apply-phi (after collapsing an alive new element)
      n in S1_s minus S2_s keep-building (after collapsing an alive new element)
      n in S1_s and S2_s   introduce the new commuting element, or keep building
    """
    fam = family_for(base)
    state = ThreeState(variant=base)
    state.family = fam
    state.phi_count = 0
    state.alive = None
    state.collapses = 0
    state.classifications = []
    for s in range(stages):
        state.stage = s
        in1, in2 = approx.at(n, s)
        before = dict(state.facts)
        if state.alive is not None and not (in1 and in2):
            _collapse(state)
            branch = "collapse"
        elif not in1:
            state.remap(fam.endo, base)
            state.phi_count += 1
            branch = "apply-phi"
        elif in2 and state.alive is None:
            state.remap(fam.include, fam.product)
            state.alive = state.add_name(fam.new_element())
            branch = "introduce"
        else:
            branch = "keep-building"
        if branch != "introduce":
            state.add_name(_next_unnamed(state, state.variant))
        state.log.append((s, branch, len(state.facts)))
        state.classifications.append(state.classification())
        if check:
            check_monotone(before, state.facts)
            state.check_consistent()
    return state


def _collapse(state: ThreeState) -> None:
    fam = state.family
    N = 1 + max((fam.magnitude(x) for x in state.real), default=0)
    while True:
        images = [fam.collapse(x, N) for x in state.real]
        if len(set(images)) == len(images):
            break
        N += 1
    state.remap(lambda x: fam.collapse(x, N), fam.base)
    state.alive = None
    state.collapses += 1


# ---------------------------------------------------------------------------
# residual maps N_{p,m} -> N_{p,m-1}


@dataclass
class ResidualMap:
    """Fix every letter except ``dropped``, which goes to ``image``."""

    group: FreeNilpotent
    dropped: int
    image: NilElt
    tried: int = 0

    def __call__(self, g: NilElt) -> NilElt:
        if all(self.dropped not in w for w, _ in g.coords):
            return g
        G = self.group

        class _Images(dict):
            def __missing__(inner, i):
                return G.gen(i)

        return G.apply_hom(g, _Images({self.dropped: self.image}), G)


def _candidates(G: FreeNilpotent, letters: list):
    """Elements over ``letters`` breadth-first by word length, identity first."""
    steps = [G.gen(l) for l in letters] + [G._inv(G.gen(l)) for l in letters]
    seen = {G.identity()}
    frontier = [G.identity()]
    yield G.identity()
    while frontier:
        nxt = []
        for g in frontier:
            for st in steps:
                h = G._mul(g, st)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    yield h
        frontier = nxt


def drop_letter(G: FreeNilpotent, dropped: int, letters: list, finite_set: list,
                bound: int = 5000) -> ResidualMap:
    """Search for an image of ``dropped`` (among words in ``letters``) injective on ``finite_set``."""
    finite_set = list(dict.fromkeys(finite_set))
    fixed = [g for g in finite_set if all(dropped not in w for w, _ in g.coords)]
    moving = [g for g in finite_set if any(dropped in w for w, _ in g.coords)]
    fixed_set = set(fixed)
    for tried, cand in enumerate(_candidates(G, [l for l in letters if l != dropped]), 1):
        if tried > bound:
            break
        psi = ResidualMap(G, dropped, cand, tried)
        images = [psi(g) for g in moving]
        if len(set(images)) == len(images) and not fixed_set.intersection(images):
            verify_residual(psi, finite_set)
            return psi
    raise SearchFailure(f"no image for letter {dropped} within {bound} candidates")


def verify_residual(psi: ResidualMap, finite_set: list) -> None:
    """Homomorphism on products of the finite set and injectivity on it, by the word problem."""
    G = psi.group
    imgs = [psi(g) for g in finite_set]
    if len(set(imgs)) != len(imgs):
        raise AssertionError("residual map not injective on the finite set")
    sample = finite_set[:12]
    for g in sample:
        for h in sample:
            if psi(G._mul(g, h)) != G._mul(psi(g), psi(h)):
                raise AssertionError("residual map is not a homomorphism")
    if any(psi.dropped in w for x in imgs for w, _ in x.coords):
        raise AssertionError("image still mentions the dropped generator")


def residual_embed(p: int, m: int, finite_set: list, bound: int = 5000) -> ResidualMap:
    """A homomorphism N_{p,m} -> N_{p,m-1} (last generator dropped) injective on ``finite_set``."""
    if m - 1 < p or p < 1:
        raise InputError("need m - 1 >= p >= 1")
    if not finite_set:
        raise InputError("finite set must be nonempty")
    G = FreeNilpotent(p, m, unbounded=True)
    G.check(*finite_set)
    return drop_letter(G, m - 1, list(range(m - 1)), finite_set, bound)


# ---------------------------------------------------------------------------
# COF reduction into N_{p,inf}


class CofState(StageState):
    p: int
    labels: dict  # label -> name index
    letter_of: dict  # label -> letter while the generator survives
    survivors: list
    collapsed: list
    residual_calls: int = 0

    def surviving_a(self) -> list:
        return [k for k in self.survivors]

    def classification(self) -> str:
        """``N_{p,inf}`` if some generator named in the second half of the run survives."""
        recent = [k for k in self.survivors if k >= self.stage // 2]
        if recent:
            return f"N_{{{self.p},inf}}"
        return f"N_{{{self.p},{self.p + 1 + len(self.survivors)}}}"


def build_cof_reduction(n: int, W: StagedSet, p: int, stages: int, check: bool = True,
                        checkpoints=()) -> CofState:
    """Name b_0..b_p, then one new generator a_s (and [a_s, b_0]) per stage; collapse a_k once k is in W.

    Generators are letters of N_{p,inf}: b_j is letter j, a_k is letter p+1+k.
    A collapse replaces a_k's letter by a word in the surviving letters,
    chosen injective on everything named so far.
    """
    if p not in (1, 2):
        raise InputError("COF reduction implemented for p in {1, 2}")
    G = FreeNilpotent(p, None, unbounded=True)
    state = CofState(variant=G)
    state.p = p
    state.labels = {}
    state.letter_of = {}
    state.survivors = []
    state.collapsed = []
    state.residual_calls = 0
    state.snapshots = {}
    for j in range(p + 1):
        state.labels[f"b{j}"] = state.add_name(G.gen(j))
        state.letter_of[f"b{j}"] = j
    for s in range(stages):
        state.stage = s
        before = dict(state.facts)
        letter = p + 1 + s
        state.labels[f"a{s}"] = state.add_name(G.gen(letter))
        state.letter_of[f"a{s}"] = letter
        state.survivors.append(s)
        extra = G.commutator(G.gen(letter), G.gen(0)) if p >= 2 else G._mul(G.gen(letter), G.gen(0))
        if extra not in set(state.real):
            state.add_name(extra)
        branch = "build"
        for k in sorted(W.at(s)):
            if k in state.survivors:
                _cof_collapse(state, k)
                branch = "collapse"
        state.log.append((s, branch, len(state.facts)))
        if check:
            check_monotone(before, state.facts)
            state.check_consistent()
        if s + 1 in checkpoints:
            state.snapshots[s + 1] = (len(state.survivors), state.classification())
    return state


def _cof_collapse(state: CofState, k: int) -> None:
    G = state.variant
    dropped = state.letter_of.pop(f"a{k}")
    letters = sorted(state.letter_of.values())
    psi = drop_letter(G, dropped, letters + [dropped], state.real)
    state.residual_calls += 1
    state.remap(psi, G)
    state.survivors.remove(k)
    state.collapsed.append(k)

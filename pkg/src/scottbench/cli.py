"""Command-line interface.

Exit codes: 0 on success, 1 on domain errors, 2 on usage errors (bad
arguments, unknown family or builder names, malformed input files).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Optional

from . import scott
from .errors import InputError, ScottBenchError
from .evaluator import evaluate
from .formula import classify, parse, pretty, serialize
from .groups import parse_spec
from .priority import PriorityInstance, run as run_priority
from .qgroups import QGroupSpec, SyntheticHalting, build_sigma3_reduction, iso_compare
from .reductions import SigmaTwoApprox, StagedSet, build_cof_reduction, build_three_state


class UsageError(Exception):
    pass


def _usage(fn: Callable, *args):
    """Run an argument-resolving step; its input errors are usage errors."""
    try:
        return fn(*args)
    except (InputError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _group(text: str):
    return _usage(parse_spec, text)


# -- named formulas -------------------------------------------------------------
# NAME[:ARGS] -> (formula, variables to bind from --tuple, default group spec)


def _phi(spec: str):
    phi, xs, _ = scott.generating_formula(spec)
    return phi, xs, spec


def _scott(spec: str):
    plan = scott.scott_sentence(spec)
    return plan.sentence, (), plan.spec


def _ints(args: str) -> list:
    return [int(a) for a in args.split(",") if a]


NAMED = {
    "phi": _phi,
    "scott": _scott,
    "lamplighter-phi": lambda a: _phi(f"lamplighter {a}"),
    "zwrz-phi": lambda a: _phi("zwrz"),
    "bs1n-phi": lambda a: _phi(f"bs1n {a}"),
    "freenil-phi": lambda a: _phi("freenil " + " ".join(a.split(","))),
    "fgabelian-phi": lambda a: _phi("fgabelian " + " ".join(a.split(","))),
    "iso-type": lambda a: (scott.iso_type_formula(a), scott.names("x", len(scott.group(a).generators())), a),
    "gamma": lambda a: (lambda p, k: (scott.gamma_k(p, k), scott.names("x", k), f"freenil {p} inf"))(*_ints(a)),
    "infinite": lambda a: (scott.infinite_generating_sentence(int(a)), (), f"freenil {a} inf"),
    "cohopfian": lambda a: (scott.cohopfian_sentence(a), (), a),
}


def resolve_formula(name: Optional[str], text: Optional[str], path: Optional[str]):
    if sum(x is not None for x in (name, text, path)) != 1:
        raise UsageError("give exactly one of --formula, --text, --file")
    if name is not None:
        key, _, args = name.partition(":")
        if key not in NAMED:
            raise UsageError(f"unknown formula {key!r}; known: {', '.join(sorted(NAMED))}")
        return _usage(NAMED[key], args)
    if path is not None:
        text = _usage(_read, path)
    f = _usage(parse, text)
    return f, tuple(sorted(f.free)), None


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _lines(path: str) -> list:
    out = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _write_trace(path: Optional[str], lines: list) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))


# -- input files -----------------------------------------------------------------


def read_approx(path: str) -> SigmaTwoApprox:
    """One line per stage, ``<in S1> <in S2>`` as 0/1; the last line repeats forever."""
    rows = []
    for parts in _lines(path):
        if len(parts) != 2 or any(p not in ("0", "1") for p in parts):
            raise InputError(f"approximation line must be two 0/1 flags: {' '.join(parts)}")
        rows.append((parts[0] == "1", parts[1] == "1"))
    if not rows:
        raise InputError("empty approximation file")
    return SigmaTwoApprox.eventually(rows[:-1], rows[-1])


def read_schedule(path: str) -> StagedSet:
    """Lines ``<k> <stage>``: k is enumerated at that stage."""
    sched = {}
    for parts in _lines(path):
        if len(parts) != 2:
            raise InputError(f"schedule line must be '<k> <stage>': {' '.join(parts)}")
        sched[int(parts[0])] = int(parts[1])
    return StagedSet.from_schedule(sched)


def read_halting(path: str) -> SyntheticHalting:
    """Lines ``base <e> <stage>``, ``program <m> <s> <stage>`` and ``program <m> all <delay>``."""
    base: dict = {}
    table: dict = {}
    delays: dict = {}
    for parts in _lines(path):
        if parts[0] == "base" and len(parts) == 3:
            base[int(parts[1])] = int(parts[2])
        elif parts[0] == "program" and len(parts) == 4 and parts[2] == "all":
            delays[int(parts[1])] = int(parts[3])
        elif parts[0] == "program" and len(parts) == 4:
            table.setdefault(int(parts[1]), {})[int(parts[2])] = int(parts[3])
        else:
            raise InputError(f"bad halting line: {' '.join(parts)}")
    programs = {}
    for m in set(table) | set(delays):
        programs[m] = _program(table.get(m, {}), delays.get(m))
    return SyntheticHalting(base, programs)


def _program(halts: dict, delay: Optional[int]):
    def stage(s):
        if s in halts:
            return halts[s]
        return None if delay is None else s + delay

    return stage


def read_priority(path: str, stages: int) -> PriorityInstance:
    """Lines ``D <i> <stage>``, ``W <k> <n> <stage>`` and ``W <k> all`` (n enters at stage n)."""
    D: dict = {}
    W: dict = {}
    full: set = set()
    for parts in _lines(path):
        if parts[0] == "D" and len(parts) == 3:
            D[int(parts[1])] = int(parts[2])
        elif parts[0] == "W" and len(parts) == 3 and parts[2] == "all":
            full.add(int(parts[1]))
        elif parts[0] == "W" and len(parts) == 4:
            W.setdefault(int(parts[1]), {})[int(parts[2])] = int(parts[3])
        else:
            raise InputError(f"bad priority line: {' '.join(parts)}")
    inst = PriorityInstance.simple(D, W, stages)
    finite = inst.W

    def Wk(k):
        return StagedSet(lambda s: range(s + 1)) if k in full else finite(k)

    return PriorityInstance(inst.D, Wk, stages)


# -- commands ---------------------------------------------------------------------


def cmd_group(a) -> int:
    G = _group(a.spec)
    if a.action == "enumerate":
        for g in G.enumerate(a.count):
            print(G.format_element(g))
        return 0
    if a.w1 is None:
        raise UsageError(f"group {a.action} needs --w1")
    g = _usage(G.element, a.w1)
    if a.action == "word":
        print(G.format_element(g))
        return 0
    if a.w2 is None:
        raise UsageError(f"group {a.action} needs --w2")
    h = _usage(G.element, a.w2)
    if a.action == "eq":
        print("true" if G.equal(g, h) else "false")
    else:
        print(G.format_element(G.mul(g, h)))
    return 0


def cmd_formula(a) -> int:
    f, _, _ = resolve_formula(a.formula, a.text, a.file)
    if a.action == "classify":
        print(classify(f))
    elif a.action == "print":
        print(pretty(f))
    else:
        print(serialize(f))
    return 0


def cmd_eval(a) -> int:
    f, xs, spec = resolve_formula(a.formula, a.text, a.file)
    spec = a.spec or spec
    if spec is None:
        raise UsageError("eval needs --spec for this formula")
    G = _group(spec)
    values = [v.strip() for v in a.tuple.split(",")] if a.tuple else []
    if len(values) != len(xs):
        raise UsageError(f"expected {len(xs)} tuple entries for variables {', '.join(xs) or '(none)'}")
    env = {x: _usage(G.element, v) for x, v in zip(xs, values)}
    print(evaluate(f, G, a.B, a.J, env, oracles=a.oracles).render())
    return 0


def cmd_reduce(a) -> int:
    if a.kind == "three-state":
        if not (a.family and a.approx):
            raise UsageError("three-state needs --family and --approx")
        G = _group(a.family)
        approx = _usage(read_approx, a.approx)
        st = build_three_state(a.n, approx, G, a.stages)
        print(f"classification {st.classification()}")
        print(f"collapses {st.collapses} phi {st.phi_count} names {len(st.real)} facts {len(st.facts)}")
        trace = st.trace()
    elif a.kind == "cof":
        if not a.W:
            raise UsageError("cof needs --W")
        W = _usage(read_schedule, a.W)
        st = build_cof_reduction(a.n, W, a.p, a.stages)
        print(f"classification {st.classification()}")
        print(f"survivors {' '.join(f'a{k}' for k in st.survivors) or '(none)'}")
        trace = st.trace()
    else:
        if not a.halting:
            raise UsageError("sigma3 needs --halting")
        H = _usage(read_halting, a.halting)
        r = build_sigma3_reduction(a.n, H, a.stages)
        t = a.stages - 1
        print(r.spec_at(t).text())
        print(f"fin {len(r.spec_at(t).p_fin())} iso {str(iso_compare(r.spec_at(t), r.target_at(t), a.tolerance)).lower()}")
        trace = r.trace()
    _write_trace(a.trace, trace)
    return 0


def cmd_priority(a) -> int:
    inst = _usage(read_priority, a.instance, a.stages)
    st = run_priority(inst)
    print("X " + (" ".join(map(str, sorted(st.X))) or "(empty)"))
    for k in sorted(st.S):
        if st.S[k]:
            print(f"S_{k} " + " ".join(map(str, sorted(st.S[k]))))
    _write_trace(a.trace, st.trace())
    return 0


def cmd_qsub(a) -> int:
    if a.action == "member":
        if not (a.spec and a.q):
            raise UsageError("member needs --spec and --q")
        spec = _usage(QGroupSpec.parse, a.spec)
        q = _usage(Fraction, a.q)
        res = spec.member(q)
        print("indeterminate" if res is None else str(res).lower())
    else:
        if not (a.a and a.b):
            raise UsageError("iso-compare needs --a and --b")
        A, B = _usage(QGroupSpec.parse, a.a), _usage(QGroupSpec.parse, a.b)
        print(str(iso_compare(A, B, a.tolerance)).lower())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scottbench", description="Scott sentences of computable groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="word problem queries")
    g.add_argument("action", choices=["mul", "eq", "enumerate", "word"])
    g.add_argument("--spec", required=True)
    g.add_argument("--w1")
    g.add_argument("--w2")
    g.add_argument("--count", type=int, default=10)
    g.set_defaults(fn=cmd_group)

    def formula_source(p):
        p.add_argument("--formula", help="named formula NAME[:ARGS]")
        p.add_argument("--text", help="formula as an s-expression")
        p.add_argument("--file", help="file holding an s-expression")

    f = sub.add_parser("formula", help="build, classify or print a formula")
    f.add_argument("action", choices=["build", "classify", "print"])
    formula_source(f)
    f.set_defaults(fn=cmd_formula)

    e = sub.add_parser("eval", help="bounded three-valued evaluation")
    formula_source(e)
    e.add_argument("--spec")
    e.add_argument("--tuple", default="")
    e.add_argument("--B", type=int, default=50)
    e.add_argument("--J", type=int, default=50)
    e.add_argument("--oracles", action="store_true")
    e.set_defaults(fn=cmd_eval)

    r = sub.add_parser("reduce", help="stagewise reductions on synthetic inputs")
    r.add_argument("kind", choices=["three-state", "cof", "sigma3"])
    r.add_argument("--n", type=int, default=0)
    r.add_argument("--stages", type=int, default=20)
    r.add_argument("--family")
    r.add_argument("--approx")
    r.add_argument("--W")
    r.add_argument("--p", type=int, default=2)
    r.add_argument("--halting")
    r.add_argument("--tolerance", type=int)
    r.add_argument("--trace")
    r.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("priority", help="the finite-injury construction")
    p.add_argument("--instance", required=True)
    p.add_argument("--stages", type=int, default=50)
    p.add_argument("--trace")
    p.set_defaults(fn=cmd_priority)

    q = sub.add_parser("qsub", help="subgroups of Q")
    q.add_argument("action", choices=["member", "iso-compare"])
    q.add_argument("--spec")
    q.add_argument("--q")
    q.add_argument("--a")
    q.add_argument("--b")
    q.add_argument("--tolerance", type=int)
    q.set_defaults(fn=cmd_qsub)
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"scottbench {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ScottBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

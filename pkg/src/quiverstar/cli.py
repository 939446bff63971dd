"""Command-line surface: named quivers or quiver files in, text/JSON/DOT out.

Exit codes: 0 success, 2 usage error, 3 genericity/no-majority failure,
4 internal route disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fieldops as fo
from .errors import NoMajorityError, NotDynkinError, QuiverStarError, RouteMismatchError
from .pimod import ext1_pi_dim_cb, ext_space, sample_conormal
from .qrep import RootMultiset
from .quiver import is_dynkin, load_quiver, positive_roots
from .starops import (
    associativity_probe,
    crystal_f,
    dual_component,
    enumerate_components,
    star_product,
    strongly_commute,
    weakly_commute,
)
from .pimod import rigidity_report
from .suites import available_suites, run_suite


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--quiver", default="A2", help="builtin name or JSON file path")
    parser.add_argument("--prime", type=int, default=fo.DEFAULT_PRIME)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=fo.DEFAULT_TRIALS)
    parser.add_argument(
        "--format", choices=("text", "json", "dot"), default="text", dest="fmt"
    )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quiverstar",
        description="component calculus on nilpotent varieties of ADE quivers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="list the positive roots")
    _add_common(p)

    p = sub.add_parser("components", help="list components of a dimension vector")
    p.add_argument("dim", help="comma-separated dimension vector, e.g. 1,1,1")
    _add_common(p)

    p = sub.add_parser("star", help="product of two components")
    p.add_argument("m")
    p.add_argument("n")
    _add_common(p)

    p = sub.add_parser("rigid", help="rigidity of a component")
    p.add_argument("m")
    _add_common(p)

    p = sub.add_parser("commute", help="strong/weak commutativity of two components")
    p.add_argument("m")
    p.add_argument("n")
    _add_common(p)

    p = sub.add_parser("dual", help="dual of a component")
    p.add_argument("m")
    _add_common(p)

    p = sub.add_parser("crystal", help="graph of left lowering operators")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--dot", action="store_true", help="shorthand for --format dot")
    _add_common(p)

    p = sub.add_parser("assoc", help="compare the two bracketings of a triple")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("k")
    _add_common(p)

    p = sub.add_parser("ext-table", help="generic Ext dimensions over Irrcomp(d) x Irrcomp(d)")
    p.add_argument("dim")
    _add_common(p)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("suite", choices=available_suites())
    _add_common(p)

    return ap


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for key, val in payload.items():
            if isinstance(val, list):
                print(f"{key}:")
                for item in val:
                    print(f"  {item}")
            else:
                print(f"{key}: {val}")


def _parse_dim(text: str, n: int) -> tuple[int, ...]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    d = tuple(int(x) for x in parts)
    if len(d) != n:
        raise ValueError(f"dimension vector has {len(d)} entries, quiver has {n}")
    return d


def _crystal_graph(q, ctx, depth: int, trials: int):
    """BFS of left lowering operators from the empty multiset."""
    start = RootMultiset.empty(q.n)
    nodes = {start}
    edges = []
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for m in frontier:
            for i in range(q.n):
                res = crystal_f(q, i, m, ctx, "left", trials)
                edges.append((m, i, res))
                if res not in nodes:
                    nodes.add(res)
                    nxt.append(res)
        frontier = nxt
    return nodes, edges


def _run(args) -> int:
    q = load_quiver(args.quiver)
    ctx = fo.FieldCtx(args.prime, args.seed)
    trials = args.trials
    if trials < 1:
        raise ValueError("trials must be at least 1")
    fmt = args.fmt

    if args.command == "roots":
        roots = [list(b) for b in positive_roots(q)]
        ok, label = is_dynkin(q)
        _emit({"type": label, "count": len(roots), "roots": roots}, fmt)
        return 0

    if args.command == "components":
        d = _parse_dim(args.dim, q.n)
        comps = enumerate_components(q, d)
        _emit({"dim": list(d), "count": len(comps), "components": [str(c) for c in comps]}, fmt)
        return 0

    if args.command == "star":
        m = RootMultiset.parse(args.m, q.n)
        n = RootMultiset.parse(args.n, q.n)
        res = star_product(q, m, n, ctx, trials)
        _emit(res.to_json_dict(), fmt)
        return 0

    if args.command == "rigid":
        m = RootMultiset.parse(args.m, q.n)
        rep = rigidity_report(q, m, ctx, trials)
        _emit(
            {"component": str(m), "rigid": rep.rigid, "trials": rep.trials, "agreement": rep.agreement},
            fmt,
        )
        return 0

    if args.command == "commute":
        m = RootMultiset.parse(args.m, q.n)
        n = RootMultiset.parse(args.n, q.n)
        strong = strongly_commute(q, m, n, ctx, trials)
        weak = weakly_commute(q, m, n, ctx, trials)
        _emit({"strong": strong, "weak": weak, "trials": trials}, fmt)
        return 0

    if args.command == "dual":
        m = RootMultiset.parse(args.m, q.n)
        res = dual_component(q, m, ctx, trials)
        _emit({"component": str(m), "dual": str(res), "trials": trials}, fmt)
        return 0

    if args.command == "crystal":
        nodes, edges = _crystal_graph(q, ctx, args.depth, trials)
        if args.dot or fmt == "dot":
            print("digraph crystal {")
            for m in sorted(nodes, key=str):
                print(f'  "{m}";')
            for m, i, res in edges:
                print(f'  "{m}" -> "{res}" [label="f{q.vertices[i]}"];')
            print("}")
            return 0
        payload = {
            "nodes": sorted(str(m) for m in nodes),
            "edges": [f"{m} -(f{q.vertices[i]})-> {res}" for m, i, res in edges],
        }
        _emit(payload, fmt)
        return 0

    if args.command == "assoc":
        m = RootMultiset.parse(args.m, q.n)
        n = RootMultiset.parse(args.n, q.n)
        k = RootMultiset.parse(args.k, q.n)
        probe = associativity_probe(q, m, n, k, ctx, trials)
        _emit(
            {"left": str(probe.left), "right": str(probe.right), "equal": probe.equal, "trials": trials},
            fmt,
        )
        return 0

    if args.command == "ext-table":
        d = _parse_dim(args.dim, q.n)
        comps = enumerate_components(q, d)
        table = []
        for m in comps:
            row = []
            for n in comps:
                best = None
                for t in range(trials):
                    sub = ctx.trial(t)
                    val = ext1_pi_dim_cb(
                        sample_conormal(q, m, sub), sample_conormal(q, n, sub)
                    )
                    best = val if best is None else min(best, val)
                row.append(best)
            table.append(row)
        _emit(
            {"components": [str(c) for c in comps], "ext1": table, "trials": trials},
            fmt,
        )
        return 0

    if args.command == "check":
        results = run_suite(args.suite, args.prime, args.seed, trials)
        failed = False
        for res in results:
            status = "PASS" if res.passed else "FAIL"
            print(f"[{status}] {res.name}")
            for line in res.lines:
                print(f"    {line}")
            failed = failed or not res.passed
        return 1 if failed else 0

    raise ValueError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _run(args)
    except NoMajorityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.candidates:
            print(f"candidates: {exc.candidates}", file=sys.stderr)
        return 3
    except RouteMismatchError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 4
    except (NotDynkinError, QuiverStarError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

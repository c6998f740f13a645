"""ppcount command line.

Every subcommand takes the polynomial as a positional string and prints one
JSON document (tree --format dot prints Graphviz text instead). Counts,
coefficients, and coordinates are decimal strings in the JSON since they
outgrow doubles quickly; p and k stay numbers. Output contains no timings,
so: same inputs, same bytes, regardless of thread count.

Exit codes: 0 success, 1 bad input (syntax, non-prime p, a point that is not
a smooth root, ...), 2 resource refusals, internal failures, and verify
mismatches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ppcount.counter import (
    CountConfig,
    count_points,
    poincare_prefix,
    tree_audit,
    tree_to_dot,
    tree_to_json,
)
from ppcount.curve import (
    AllCurvePoints,
    HorizontalLines,
    IsolatedPoints,
    VerticalLines,
    hensel_lifts,
    singular_locus,
)
from ppcount.errors import (
    ConstantReduction,
    NotARoot,
    NotPrime,
    NotSeparated,
    NotSmooth,
    PolySyntaxError,
    PpcountError,
    ZeroReduction,
)
from ppcount.fpcount import fp_point_count
from ppcount.modarith import PrimePowerCtx, SplitRng
from ppcount.parse import curve_from_text, pretty
from ppcount.unipoly import RootMethod

SCHEMA = "ppcount/1"

_METHODS = {"auto": RootMethod.AUTO, "brute": RootMethod.BRUTE, "cz": RootMethod.CZ}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit(2) on bad usage; the contract reserves 2 for
    # resource and internal failures, so reroute to a catchable error.
    def error(self, message):
        raise _UsageError(message)


def _add_common(sp: argparse.ArgumentParser, with_k: bool = True) -> None:
    sp.add_argument("poly", help="separated polynomial, e.g. 'x2^2 - x1^3 - x1 - 1'")
    sp.add_argument("--p", type=int, required=True, help="prime base of the modulus")
    if with_k:
        sp.add_argument("--k", type=int, required=True, help="exponent of the modulus p^k")
    sp.add_argument("--seed", type=int, default=0, help="seed for the root-finding rng")
    sp.add_argument("--method", choices=sorted(_METHODS), default="auto")
    sp.add_argument("--node-budget", type=int, default=10**6)
    sp.add_argument(
        "--threads", type=int, default=None, help="worker threads (default PPCOUNT_THREADS or 1)"
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="ppcount", description="Exact root counts of g(x1)+h(x2) over Z/p^k.")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("count", help="count roots over Z/p^k"))

    verify = sub.add_parser("verify", help="count and cross-check against the exhaustive oracle")
    _add_common(verify)
    verify.add_argument(
        "--force-naive",
        action="store_true",
        help="run the oracle even past its default work ceiling",
    )

    tree = sub.add_parser("tree", help="emit the recursion tree")
    _add_common(tree)
    tree.add_argument("--format", choices=["json", "dot"], default="json")
    tree.add_argument("--audit", action="store_true", help="include structural bound checks")

    poincare = sub.add_parser("poincare", help="prefix of the root-density series")
    poincare.add_argument("poly")
    poincare.add_argument("--p", type=int, required=True)
    poincare.add_argument("--kmax", type=int, required=True)
    poincare.add_argument("--seed", type=int, default=0)
    poincare.add_argument("--method", choices=sorted(_METHODS), default="auto")
    poincare.add_argument("--node-budget", type=int, default=10**6)
    poincare.add_argument("--threads", type=int, default=None)

    lift = sub.add_parser("lift", help="Hensel-lift a smooth root one precision step")
    lift.add_argument("poly")
    lift.add_argument("--p", type=int, required=True)
    lift.add_argument("--k", type=int, required=True)
    lift.add_argument("--point", required=True, help="root mod p^j as 'a,b'")
    lift.add_argument("--from-k", type=int, required=True, dest="from_k", help="the j of the root")

    fpc = sub.add_parser("fp-count", help="count roots over F_p")
    fpc.add_argument("poly")
    fpc.add_argument("--p", type=int, required=True)

    sing = sub.add_parser("singular", help="singular locus of the mod-p reduction")
    sing.add_argument("poly")
    sing.add_argument("--p", type=int, required=True)
    sing.add_argument("--seed", type=int, default=0)
    sing.add_argument("--method", choices=sorted(_METHODS), default="auto")

    return parser


def _config(args) -> CountConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("PPCOUNT_THREADS", "1"))
    return CountConfig(
        method=_METHODS[args.method], node_budget=args.node_budget, threads=threads
    )


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _head(args, command: str, k=None) -> dict:
    return {"schema": SCHEMA, "command": command, "p": args.p, "k": k}


def _cmd_count(args) -> int:
    ctx = PrimePowerCtx.create(args.p, args.k)
    curve = curve_from_text(args.poly, ctx)
    res = count_points(curve, config=_config(args), seed=args.seed)
    payload = _head(args, "count", args.k)
    payload.update(
        poly=pretty(curve),
        seed=args.seed,
        N=str(res.N),
        stats={
            "nodes": res.stats.nodes,
            "fp_scans": res.stats.fp_scans,
            "root_retries": res.stats.root_retries,
        },
    )
    _emit(payload)
    return 0


def _cmd_verify(args) -> int:
    from ppcount import oracle

    ctx = PrimePowerCtx.create(args.p, args.k)
    curve = curve_from_text(args.poly, ctx)
    res = count_points(curve, config=_config(args), seed=args.seed)
    ceiling = args.p ** (2 * args.k) if args.force_naive else oracle.DEFAULT_CEILING
    expected = oracle.brute_count(curve.g.coeffs, curve.h.coeffs, args.p, args.k, ceiling=ceiling)
    payload = _head(args, "verify", args.k)
    payload.update(
        poly=pretty(curve), N=str(res.N), oracle_N=str(expected), match=res.N == expected
    )
    _emit(payload)
    return 0 if res.N == expected else 2


def _cmd_tree(args) -> int:
    if args.audit and args.format != "json":
        raise _UsageError("--audit requires --format json")
    ctx = PrimePowerCtx.create(args.p, args.k)
    curve = curve_from_text(args.poly, ctx)
    res = count_points(curve, config=_config(args), seed=args.seed)
    if args.format == "dot":
        sys.stdout.write(tree_to_dot(res.tree))
        return 0
    payload = _head(args, "tree", args.k)
    payload.update(poly=pretty(curve), N=str(res.N), tree=tree_to_json(res.tree))
    if args.audit:
        report = tree_audit(res.tree)
        payload["audit"] = {
            "ok": report.ok,
            "degree_bound": report.degree_bound,
            "nodes_total": report.nodes_total,
            "nodes_counted": report.nodes_counted,
            "max_depth": report.max_depth,
            "violations": [
                {"kind": v.kind, "node_id": v.node_id, "detail": v.detail}
                for v in report.violations
            ],
        }
    _emit(payload)
    return 0


def _cmd_poincare(args) -> int:
    if args.kmax < 0:
        raise _UsageError("--kmax must be >= 0")
    ctx = PrimePowerCtx.create(args.p, max(args.kmax, 1))
    curve = curve_from_text(args.poly, ctx)
    terms = poincare_prefix(curve, args.kmax, config=_config(args), seed=args.seed)
    payload = _head(args, "poincare")
    del payload["k"]
    payload.update(kmax=args.kmax, poly=pretty(curve), terms=[str(t) for t in terms])
    _emit(payload)
    return 0


def _cmd_lift(args) -> int:
    ctx = PrimePowerCtx.create(args.p, args.k)
    curve = curve_from_text(args.poly, ctx)
    try:
        a, b = (int(part) for part in args.point.split(","))
    except ValueError:
        raise _UsageError(f"--point must be 'a,b', got {args.point!r}")
    if not 1 <= args.from_k <= args.k - 1:
        raise _UsageError("--from-k must satisfy 1 <= j <= k-1")
    lifted = hensel_lifts(curve, (a, b), args.from_k)
    payload = _head(args, "lift", args.k)
    payload.update(
        poly=pretty(curve),
        base=[str(c) for c in lifted.base],
        from_k=lifted.j,
        count=len(lifted.lifts),
        lifts=[[str(x1), str(x2)] for x1, x2 in lifted.lifts],
    )
    _emit(payload)
    return 0


def _cmd_fp_count(args) -> int:
    ctx = PrimePowerCtx.create(args.p, 1)
    curve = curve_from_text(args.poly, ctx)
    payload = _head(args, "fp-count", 1)
    payload.update(poly=pretty(curve), N=str(fp_point_count(curve)))
    _emit(payload)
    return 0


def _cmd_singular(args) -> int:
    ctx = PrimePowerCtx.create(args.p, 1)
    curve = curve_from_text(args.poly, ctx)
    locus = singular_locus(curve, rng=SplitRng(args.seed), method=_METHODS[args.method])
    if isinstance(locus, IsolatedPoints):
        body = {"type": "isolated_points", "points": [list(pt) for pt in locus.points]}
    elif isinstance(locus, VerticalLines):
        body = {"type": "vertical_lines", "x1_values": list(locus.x1_values)}
    elif isinstance(locus, HorizontalLines):
        body = {"type": "horizontal_lines", "x2_values": list(locus.x2_values)}
    else:
        assert isinstance(locus, AllCurvePoints)
        body = {"type": "all_curve_points"}
    payload = _head(args, "singular", 1)
    payload.update(poly=pretty(curve), locus=body)
    _emit(payload)
    return 0


_DISPATCH = {
    "count": _cmd_count,
    "verify": _cmd_verify,
    "tree": _cmd_tree,
    "poincare": _cmd_poincare,
    "lift": _cmd_lift,
    "fp-count": _cmd_fp_count,
    "singular": _cmd_singular,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"ppcount: error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help prints and raises SystemExit(0)
        return 0 if exc.code in (0, None) else 1
    try:
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"ppcount: error: {exc}", file=sys.stderr)
        return 1
    except (
        PolySyntaxError,
        NotSeparated,
        NotPrime,
        ZeroReduction,
        ConstantReduction,
        NotSmooth,
        NotARoot,
        ValueError,
    ) as exc:
        print(f"ppcount: error: {exc}", file=sys.stderr)
        return 1
    except PpcountError as exc:
        print(f"ppcount: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Exit status: 0 success, 1 property violated / counterexample found (check and
verify commands), 2 usage error, 3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench
from .clusters import (
    cluster_span,
    find_cluster,
    find_cross_cluster,
    sample_random_cluster,
    s_wise_intersecting,
    union_bound_criterion,
)
from .families import (
    ParameterError,
    construct,
    from_mask,
    full_mask,
    measure,
    restrict,
)
from .io import FamilyParseError, family_to_json, format_family_text, parse_rational, read_family
from .juntas import find_regular_decomposition, regularity_check, stability_report
from .shadows import _q, biased_measure, monotone_closure, upper_shadow
from .solver import f_monotonicity_scan, solve, verify_star_extremal

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(s: str) -> list[int]:
    s = s.strip()
    if not s:
        return []
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _rational(s: str):
    try:
        return parse_rational(s)
    except ParameterError as e:
        raise argparse.ArgumentTypeError(str(e))


def _global_flags(p, default: bool) -> None:
    """--format/--output/--threads; subparsers suppress defaults so they don't clobber."""
    def dflt(value):
        return value if default else argparse.SUPPRESS

    p.add_argument("--format", choices=["text", "json"], default=dflt("text"),
                   help="output format for families (reports are always JSON)")
    p.add_argument("--output", "-o", default=dflt(None),
                   help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=dflt(None),
                   help="worker threads (default: $CLUSTERKIT_THREADS or CPU count)")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="clusterkit", description="Exact computations on (d,k,s)-clusters.")
    _global_flags(p, default=True)
    # the same flags are also accepted after the subcommand
    common = _Parser(add_help=False)
    _global_flags(common, default=False)

    def add(subs, name):
        return subs.add_parser(name, parents=[common])

    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = add(sub, "construct")
    c.add_argument("--kind", required=True,
                   choices=["star", "frankl-furedi", "odd-bipartite", "lex", "random"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--center", type=int, default=1)
    c.add_argument("--rank", type=int)
    c.add_argument("--size", type=int)
    c.add_argument("--seed", type=int, default=0)

    chk = add(sub, "check")
    csub = chk.add_subparsers(dest="check", required=True, parser_class=_Parser)
    cc = add(csub, "cluster")
    cc.add_argument("--family", required=True)
    cc.add_argument("--d", type=int, required=True)
    cc.add_argument("--s", type=int, required=True)
    cc.add_argument("--mode", choices=["exhaustive", "simplex", "simplex-cluster"],
                    default="exhaustive")
    cs = add(csub, "swise")
    cs.add_argument("--family", required=True)
    cs.add_argument("--s", type=int, required=True)
    cr = add(csub, "regular")
    cr.add_argument("--family", required=True)
    cr.add_argument("--r", type=int, required=True)
    cr.add_argument("--eps", type=_rational, required=True)

    sh = add(sub, "shadow")
    sh.add_argument("--family", required=True)
    sh.add_argument("--l", type=int, required=True)

    me = add(sub, "measure")
    me.add_argument("--family", required=True)
    me.add_argument("--p", type=_rational)

    re_ = add(sub, "restrict")
    re_.add_argument("--family", required=True)
    re_.add_argument("--J", type=_int_list, required=True)
    re_.add_argument("--B", type=_int_list, default=[])

    de = add(sub, "decompose")
    de.add_argument("--family", required=True)
    de.add_argument("--delta", type=_rational, required=True)
    de.add_argument("--eps", type=_rational, required=True)
    de.add_argument("--jmax", type=int, required=True)

    cx = add(sub, "cross-cluster")
    cx.add_argument("--families", required=True, help="comma-separated paths")
    cx.add_argument("--s", type=int)
    cx.add_argument("--l", type=int)
    cx.add_argument("--allow-repeats", action="store_true")

    sc = add(sub, "sample-cluster")
    sc.add_argument("--d", type=int, required=True)
    sc.add_argument("--l", type=int, required=True)
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--seed", type=int, default=0)

    so = add(sub, "solve")
    so.add_argument("--d", type=int, required=True)
    so.add_argument("--k", type=int, required=True)
    so.add_argument("--s", type=int, required=True)
    so.add_argument("--n", type=int, required=True)
    so.add_argument("--mode", choices=["exact", "verify-star", "greedy"], default="exact")
    so.add_argument("--seed", type=int, default=0)
    so.add_argument("--restarts", type=int, default=20)
    so.add_argument("--node-cap", type=int)
    so.add_argument("--time-cap", type=float)
    so.add_argument("--uniqueness", action="store_true")

    st = add(sub, "stability")
    st.add_argument("--family", required=True)

    sf = add(sub, "scan-f")
    sf.add_argument("--d", type=int, required=True)
    sf.add_argument("--k", type=int, required=True)
    sf.add_argument("--n", type=int, required=True)
    sf.add_argument("--s-from", type=int, required=True)
    sf.add_argument("--s-to", type=int, required=True)

    be = add(sub, "bench")
    be.add_argument("--suite", required=True, choices=sorted(bench.SUITES))
    return p


def _family_out(F, fmt):
    if fmt == "text":
        return format_family_text(F)
    return json.dumps(family_to_json(F)) + "\n"


def _report(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _threads(args) -> int:
    n = args.threads
    if n is None:
        env = os.environ.get("CLUSTERKIT_THREADS")
        if not env:
            return os.cpu_count() or 1
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"CLUSTERKIT_THREADS must be an integer, got {env!r}")
    if n < 1:
        raise UsageError(f"thread count must be at least 1, got {n}")
    return n


def _dispatch(args) -> tuple[int, str]:
    cmd = args.command
    if cmd == "construct":
        F = construct(args.kind, args.n, args.k, center=args.center, rank=args.rank,
                      size=args.size, seed=args.seed)
        return EXIT_OK, _family_out(F, args.format)

    if cmd == "check":
        F = read_family(args.family)
        if args.check == "cluster":
            mode = {"exhaustive": "exhaustive", "simplex": "simplex_only",
                    "simplex-cluster": "simplex_cluster_only"}[args.mode]
            w = find_cluster(F, args.d, args.s, mode)
            rep = {"command": "check cluster", "found": w is not None,
                   "witness": w.to_json() if w else None}
            return (EXIT_VIOLATION if w else EXIT_OK), _report(rep)
        if args.check == "swise":
            res = s_wise_intersecting(F, args.s)
            rep = {"command": "check swise", "s": args.s, "intersecting": res.intersecting,
                   "violation": None if res.violation is None
                   else [list(from_mask(A)) for A in res.violation]}
            return (EXIT_OK if res.intersecting else EXIT_VIOLATION), _report(rep)
        rep = regularity_check(F, args.r, args.eps)
        out = {"command": "check regular", **rep.to_json()}
        return (EXIT_OK if rep.regular else EXIT_VIOLATION), _report(out)

    if cmd == "shadow":
        F = read_family(args.family)
        return EXIT_OK, _family_out(upper_shadow(F, args.l), args.format)

    if cmd == "measure":
        F = read_family(args.family)
        rep = {"command": "measure", "size": len(F), "measure": _q(measure(F))}
        if args.p is not None:
            rep["p"] = _q(args.p)
            rep["biased_measure"] = _q(biased_measure(monotone_closure(F), args.p))
        return EXIT_OK, _report(rep)

    if cmd == "restrict":
        F = read_family(args.family)
        G = restrict(F, args.J, args.B)
        return EXIT_OK, _family_out(G, args.format)

    if cmd == "decompose":
        F = read_family(args.family)
        res = find_regular_decomposition(F, args.delta, args.eps, args.jmax)
        rep = {"command": "decompose", "found": res is not None,
               "decomposition": res.to_json() if res else None}
        return EXIT_OK, _report(rep)

    if cmd == "cross-cluster":
        fams = [read_family(p) for p in args.families.split(",") if p]
        n, k = fams[0].n, fams[0].k
        if any(G.n != n or G.k != k for G in fams):
            raise ParameterError("all families must share the header (n, k)")
        d = len(fams) - 1
        rep = {"command": "cross-cluster"}
        targets = fams
        s = args.s
        if args.l is not None:
            ub = union_bound_criterion(fams, args.l)
            rep["union_bound"] = ub.to_json()
            targets = [upper_shadow(G, args.l) for G in fams]
            if s is None:
                s = cluster_span(d, args.l)
        if s is None:
            raise ParameterError("cross-cluster needs --s (or --l)")
        w = find_cross_cluster(targets, s, distinct=not args.allow_repeats)
        rep.update({"s": s, "found": w is not None, "witness": w.to_json() if w else None})
        return EXIT_OK, _report(rep)

    if cmd == "sample-cluster":
        w = sample_random_cluster(args.d, args.l, full_mask(args.n), args.seed)
        return EXIT_OK, _report({"command": "sample-cluster", "witness": w.to_json()})

    if cmd == "solve":
        mode = args.mode.replace("-", "_")
        kw = dict(node_cap=args.node_cap, time_cap=args.time_cap)
        if mode == "verify_star":
            ok, counter, res = verify_star_extremal(args.d, args.k, args.s, args.n, **kw)
            rep = {"command": "solve", **res.to_json()}
            rep["star_extremal"] = ok
            rep["counterexample"] = [list(t) for t in counter.sets()] if counter else None
            code = EXIT_OK if ok and counter is None and res.exact else EXIT_VIOLATION
        else:
            res = solve(args.d, args.k, args.s, args.n, mode, seed=args.seed,
                        restarts=args.restarts, check_uniqueness=args.uniqueness, **kw)
            rep = {"command": "solve", **res.to_json()}
            code = EXIT_OK
        rep["stats"].pop("wall_time", None)
        return code, _report(rep)

    if cmd == "stability":
        F = read_family(args.family)
        return EXIT_OK, _report({"command": "stability", **stability_report(F).to_json()})

    if cmd == "scan-f":
        if args.s_to < args.s_from:
            raise ParameterError("--s-to must be at least --s-from")
        rep = f_monotonicity_scan(args.d, args.k, args.n, range(args.s_from, args.s_to + 1))
        ok = rep["nonincreasing"] and rep["below_threshold_full"] and rep["above_threshold_intersecting"]
        return (EXIT_OK if ok else EXIT_VIOLATION), _report({"command": "scan-f", **rep})

    if cmd == "bench":
        rep = bench.run_suite(args.suite)
        ok = all(case["ok"] for case in rep["cases"])
        return (EXIT_OK if ok else EXIT_VIOLATION), _report({"command": "bench", **rep})

    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _threads(args)
        code, out = _dispatch(args)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except FamilyParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ParameterError as e:
        print(f"invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

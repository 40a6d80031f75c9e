"""Command-line interface.

Subcommands:
  order    run one deterministic ordering method (ec, e-ec, ldf, ebg)
  search   run exhaustive or directed random search
  table    bounds for a range of f, one CSV row per f and column per method
  verify   run a self-check suite

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 guard
violation (search space too large, composite q, infeasible budget).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .bound import BoundParams
from .entropy import EntropyCache
from .errors import GuardViolation, PqcboundError
from .search import SearchConfig, SearchResult, run
from .verify import DEFAULT_F, SUITES

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

ORDER_METHODS = ("ec", "e-ec", "ldf", "ebg")
SEARCH_METHODS = ("exhaustive", "random")
TABLE_METHODS = ORDER_METHODS + SEARCH_METHODS


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("PQC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def order_wire(order) -> str:
    return ";".join(f"{k},{l}" for k, l in order)


def _record(args, method: str, result: SearchResult, wall_ms: int, raw: bool) -> dict:
    report = result.best
    rec = {
        "f": args.f,
        "q": args.q,
        "n": args.n,
        "method": method,
        "seed": getattr(args, "seed", None),
        "fixed_colors": getattr(args, "fixed_colors", None),
        "budget": getattr(args, "budget", None),
        "order": [[k, l] for k, l in report.order],
        "bound": f"{report.bound:.13f}",
        "cond_entropies": list(report.cond_entropies),
        "wall_time_ms": wall_ms,
    }
    if raw:
        rec["bound_hex"] = report.bound.hex()
    return rec


def _emit(rec: dict, result: SearchResult, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        out.write("f,method,bound,evaluations,wall_time_ms\n")
        out.write(
            f"{rec['f']},{rec['method']},{rec['bound']},{result.evaluations},{rec['wall_time_ms']}\n"
        )
    else:
        out.write(f"method:       {rec['method']}\n")
        out.write(f"f, q, n:      {rec['f']}, {rec['q']}, {rec['n']}\n")
        out.write(f"bound:        {rec['bound']}\n")
        if "bound_hex" in rec:
            out.write(f"bound (hex):  {rec['bound_hex']}\n")
        out.write(f"order:        {order_wire(result.best.order)}\n")
        out.write(f"evaluations:  {result.evaluations}\n")
        out.write(f"wall_time_ms: {rec['wall_time_ms']}\n")


def _run_config(args, method: str) -> tuple[SearchResult, int]:
    params = BoundParams(n=args.n, f=args.f, q=args.q)
    config = SearchConfig(
        method=method,
        params=params,
        seed=getattr(args, "seed", 0) or 0,
        budget=getattr(args, "budget", 1000) or 1000,
        fixed_colors=getattr(args, "fixed_colors", None),
        tie_policy=getattr(args, "tie", "lex"),
        workers=_threads(args),
    )
    t0 = time.perf_counter()
    if method == "exhaustive":
        from .search import exhaustive_search

        result = exhaustive_search(
            params, force=args.force, workers=config.workers
        )
    else:
        result = run(config)
    wall_ms = int((time.perf_counter() - t0) * 1000)
    return result, wall_ms


def cmd_order(args) -> int:
    result, wall_ms = _run_config(args, args.method)
    _emit(_record(args, args.method, result, wall_ms, args.raw), result, args.format, sys.stdout)
    return EXIT_OK


def cmd_search(args) -> int:
    result, wall_ms = _run_config(args, args.method)
    _emit(_record(args, args.method, result, wall_ms, args.raw), result, args.format, sys.stdout)
    return EXIT_OK


def _feasible_fixed_colors(f: int) -> int:
    """Smallest leading-class count keeping the e-ec permutation search feasible."""
    import math

    from .coloring import color_sets
    from .search import PERMUTATION_CAP

    chi = len(color_sets(f).sets)
    fixed = 1
    while math.factorial(chi - fixed) > PERMUTATION_CAP:
        fixed += 1
    return fixed


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise PqcboundError(f"--f-range must look like A..B, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise PqcboundError(f"--f-range must look like A..B with integers, got {text!r}") from None
    if a > b:
        raise PqcboundError(f"--f-range is empty: {text!r}")
    return range(a, b + 1)


def cmd_table(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        print("error: --methods must name at least one method", file=sys.stderr)
        return EXIT_USAGE
    for m in methods:
        if m not in TABLE_METHODS:
            print(f"error: unknown method {m!r} (choose from {', '.join(TABLE_METHODS)})",
                  file=sys.stderr)
            return EXIT_USAGE
    lines = ["f," + ",".join(methods)]
    for f in _parse_range(args.f_range):
        params = BoundParams(n=args.n, f=f, q=args.q)
        cache = EntropyCache(f, args.q)
        row = [str(f)]
        for m in methods:
            fixed = args.fixed_colors
            if m == "e-ec" and fixed is None:
                fixed = _feasible_fixed_colors(f)
            config = SearchConfig(
                method=m,
                params=params,
                seed=args.seed or 0,
                budget=args.budget or 1000,
                fixed_colors=fixed,
                workers=_threads(args),
            )
            result = run(config, cache=cache)
            row.append(f"{result.best.bound:.13f}")
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    f = args.f if args.f is not None else DEFAULT_F[args.suite]
    checks = suite(f, args.q)
    failed = 0
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name}: {detail}")
        failed += 0 if ok else 1
    if failed:
        print(f"{failed} of {len(checks)} checks failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", type=int, required=True, help="number of messages (vertices)")
    p.add_argument("--q", type=int, default=2, help="prime field size (default 2)")
    p.add_argument("--n", type=int, default=2, help="number of databases (default 2)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--raw", action="store_true", help="include the bound as a hex float")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: PQC_THREADS or machine parallelism)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqcbound",
        description="Capacity outer bounds for private quadratic monomial computation "
        "and searches over monomial orderings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="run one ordering method")
    p.add_argument("--method", choices=ORDER_METHODS, required=True)
    _add_common(p)
    p.add_argument("--seed", type=int, default=None, help="seed for random tie-breaking")
    p.add_argument("--fixed-colors", dest="fixed_colors", type=int, default=None,
                   help="leading color classes held fixed (e-ec)")
    p.add_argument("--tie", choices=("lex", "random"), default="lex")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("search", help="exhaustive or directed random search")
    p.add_argument("--method", choices=SEARCH_METHODS, required=True)
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000,
                   help="random-search draws (default 1000)")
    p.add_argument("--fixed-colors", dest="fixed_colors", type=int, default=None,
                   help="leading color classes held fixed (random search, default 2)")
    p.add_argument("--force", action="store_true", help="override the exhaustive-search size guard")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="bounds for a range of f")
    p.add_argument("--f-range", dest="f_range", required=True, help="inclusive range A..B")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--methods", default="ec,e-ec,ldf,ebg",
                   help="comma-separated methods (default ec,e-ec,ldf,ebg)")
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--fixed-colors", dest="fixed_colors", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", choices=tuple(SUITES), required=True)
    p.add_argument("--f", type=int, default=None)
    p.add_argument("--q", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PqcboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

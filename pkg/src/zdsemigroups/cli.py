"""Command-line surface: count, enumerate, verify, export-dot.

Exit codes: 0 ok, 1 internal method-vs-method mismatch, 2 usage error
(including budget refusals), 3 I/O error.  Deviations from tabulated
values are printed as findings and never affect the exit code on their
own.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .counting import pendant_case_breakdown, pendant_square_case
from .errors import UsageError
from .graphs import graph_to_dot, target_to_graph
from .reports import (
    ResultsCache,
    build_count_report,
    oracle_catalog,
    oracle_fits_budget,
    render_count_report,
    render_verification,
    run_verification,
    target_for,
    write_catalog,
)


def _add_common(parser: argparse.ArgumentParser, *, with_method: bool) -> None:
    parser.add_argument("--graph", required=True, choices=("kn", "kn1"),
                        help="target family: complete graph or complete graph plus pendant")
    parser.add_argument("--n", required=True, type=int, help="clique size")
    if with_method:
        parser.add_argument("--method", default="all",
                            choices=("formula", "generator", "oracle", "all"))
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes for the brute-force search")
    parser.add_argument("--allow-long-run", action="store_true",
                        help="permit searches beyond the desk-scale budget")
    parser.add_argument("--cache-dir", default=None,
                        help="directory for cached search results")


def _cache(args) -> Optional[ResultsCache]:
    return ResultsCache(args.cache_dir) if args.cache_dir else None


def cmd_count(args) -> int:
    report = build_count_report(
        args.graph, args.n, args.method,
        jobs=args.jobs, allow_long_run=args.allow_long_run, cache=_cache(args),
    )
    sys.stdout.write(render_count_report(report))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_json_obj(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.method == "all" and not report.internally_consistent:
        return 1
    return 0


def _select_catalog(args, cache):
    kind, n = args.graph, args.n
    method = args.method
    if method == "auto":
        method = "oracle" if (oracle_fits_budget(kind, n) or args.allow_long_run) else "generator"
    if method == "oracle":
        catalog = oracle_catalog(kind, n, jobs=args.jobs,
                                 allow_long_run=args.allow_long_run, cache=cache)
        if kind == "kn1" and args.case:
            from .classify import ClassCatalog
            filtered = ClassCatalog()
            for entry in catalog.entries():
                if pendant_square_case(entry.representative) == args.case:
                    filtered.add_entry(entry)
            return filtered
        return catalog
    if kind == "kn":
        from .counting import generate_clique_classes
        return generate_clique_classes(n)
    breakdown = pendant_case_breakdown(n)
    if args.case:
        return breakdown.catalogs[args.case]
    return breakdown.merged_catalog()


def cmd_enumerate(args) -> int:
    if args.case and args.graph != "kn1":
        raise UsageError("--case applies to pendant targets only")
    catalog = _select_catalog(args, _cache(args))
    write_catalog(args.graph, args.n, catalog, args.out, args.format)
    sys.stdout.write(
        f"wrote {catalog.class_count} class representatives to {args.out} ({args.format})\n"
    )
    return 0


def cmd_verify(args) -> int:
    text = args.range
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    rows, code = run_verification(
        lo, hi, jobs=args.jobs, allow_long_run=args.allow_long_run, cache=_cache(args)
    )
    sys.stdout.write(render_verification(rows, code))
    return code


def cmd_export_dot(args) -> int:
    target = target_for(args.graph, args.n)
    pendant = target.element_count if args.graph == "kn1" else None
    text = graph_to_dot(target_to_graph(target), pendant=pendant)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zdsg",
        description="Count and classify commutative zero-divisor semigroups on "
                    "complete graphs and complete graphs with one pendant vertex.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="run counting pipelines and cross-check them")
    _add_common(p_count, with_method=True)
    p_count.add_argument("--out", default=None, help="write the report as JSON")
    p_count.set_defaults(func=cmd_count)

    p_enum = sub.add_parser("enumerate", help="write class representatives to a file")
    _add_common(p_enum, with_method=False)
    p_enum.add_argument("--method", default="auto",
                        choices=("auto", "generator", "oracle"))
    p_enum.add_argument("--case", default=None,
                        choices=("zero", "self", "attach", "other"),
                        help="restrict pendant output to one pendant-square case")
    p_enum.add_argument("--format", default="json", choices=("json", "csv", "dot"))
    p_enum.add_argument("--out", required=True)
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run the cross-check matrix over a range of n")
    p_verify.add_argument("range", help="clique sizes, e.g. 3..4 or 3")
    p_verify.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p_verify.add_argument("--allow-long-run", action="store_true")
    p_verify.add_argument("--cache-dir", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_dot = sub.add_parser("export-dot", help="write the target graph in DOT form")
    p_dot.add_argument("--graph", required=True, choices=("kn", "kn1"))
    p_dot.add_argument("--n", required=True, type=int)
    p_dot.add_argument("--out", default=None)
    p_dot.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line driver: `unstalg run <suite>` and `unstalg calc "<expr>"`.

Suite reports are reproducible certificates: pure functions of
(suite, bound), with text and JSON renderings that are byte-stable.
Exit status 0 means every check passed; 1 means some check failed;
2 is a usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, kam, steenrod, symalg
from .suites import min_bound, run_suite, suite_names

DEFAULT_BOUND = 24


def _bound_default() -> int:
    env = os.environ.get("UNSTALG_BOUND")
    if env is None:
        return DEFAULT_BOUND
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"unstalg: invalid UNSTALG_BOUND {env!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unstalg",
        description="Exact verification engine for the Steenrod action on the mod-2 symmetric algebra.",
    )
    parser.add_argument("--version", action="version", version=f"unstalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=suite_names())
    run.add_argument("--bound", type=int, default=None,
                     help="degree bound (default 24, or UNSTALG_BOUND)")
    run.add_argument("--format", choices=["text", "json"], default="text")
    run.add_argument("--jobs", type=int, default=1, help="parallel task workers")
    run.add_argument("--out", default=None, help="write the report to a file instead of stdout")

    calc = sub.add_parser("calc", help='evaluate "<word> | <polynomial>"')
    calc.add_argument("expr")
    return parser


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_run(args) -> int:
    bound = args.bound if args.bound is not None else _bound_default()
    if args.jobs < 1:
        print("unstalg: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        report = run_suite(args.suite, bound, jobs=args.jobs)
    except ValueError:
        print(
            f"unstalg: suite {args.suite} requires bound >= {min_bound(args.suite)} "
            f"(got {bound})",
            file=sys.stderr,
        )
        return 2
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(report.to_text(), args.out)
    return 0 if report.ok else 1


def cmd_calc(args) -> int:
    expr = args.expr
    if expr.count("|") != 1:
        print("unstalg: expected exactly one '|' in the expression", file=sys.stderr)
        return 2
    word_text, poly_text = expr.split("|")
    try:
        poly = symalg.parse_poly(poly_text.strip())
    except symalg.ParseError as exc:
        offset = len(word_text) + 1 + (len(poly_text) - len(poly_text.lstrip()))
        print(f"unstalg: {exc} in polynomial starting at position {offset}", file=sys.stderr)
        return 2
    stripped = word_text.strip()
    try:
        if stripped.startswith("D_") or stripped == "1":
            result = kam.d_word_apply(kam.parse_d_word(stripped), poly)
        else:
            result = symalg.sq_word_on_poly(steenrod.parse_sq_word(stripped), poly)
    except ValueError as exc:
        print(f"unstalg: {exc} (at position {expr.index(stripped) if stripped else 0})",
              file=sys.stderr)
        return 2
    print(symalg.format_poly(result))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    return cmd_calc(args)


if __name__ == "__main__":
    sys.exit(main())

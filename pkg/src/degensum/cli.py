"""Command-line surface: compute sums, tabulate special numbers, run the
verification registry, and evaluate degenerate moments.

Exit codes follow the sysexits convention where it matters:

* 0  success
* 2  mathematical disagreement (cross-checked values differ)
* 64 usage error (bad flags, malformed rational)
* 65 data error (unreadable or invalid PMF file)

Output is deterministic: identical argument vectors (including --seed)
produce byte-identical stdout.  Symbolic values print with the ASCII
variable letter ``L``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .probmoment import (
    PMFInvariantError,
    compute_moment_report,
    load_pmf_json,
    uniform_pmf,
)
from .ring import PolyRing, RationalRing, Ring, parse_rational, scalar_text
from .special import degen_bernoulli_numbers, degen_stirling2
from .sums import METHOD_NAMES, sum_all_methods, sum_by_method
from .verify import run_verify

__all__ = ["main", "build_parser", "EX_OK", "EX_DISAGREE", "EX_USAGE", "EX_DATAERR"]

EX_OK = 0
EX_DISAGREE = 2
EX_USAGE = 64
EX_DATAERR = 65

FORMATS = ("plain", "json", "csv")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 64 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _add_lambda_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--lambda",
        dest="lam",
        metavar="P/Q",
        help="fixed rational lambda, e.g. 0, 1/2 or --lambda=-2/3",
    )
    group.add_argument(
        "--symbolic",
        action="store_true",
        help="treat lambda as a formal variable (printed as L)",
    )


def _add_format_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=FORMATS,
        default="plain",
        help="output format (default: plain)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="degensum",
        description=(
            "Exact sums of degenerate falling factorials by six independent "
            "algorithms, degenerate Bernoulli/Stirling tables, degenerate "
            "moments of finite distributions, and a cross-verification "
            "harness."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sum_p = sub.add_parser(
        "sum",
        help="compute S_k(n) by one method or all six",
        description="Compute the sum of degenerate falling factorials S_k(n).",
    )
    sum_p.add_argument("--k", type=int, required=True, help="order k >= 1")
    sum_p.add_argument("--n", type=int, required=True, help="upper limit n >= 0")
    _add_lambda_options(sum_p)
    sum_p.add_argument(
        "--method",
        choices=METHOD_NAMES + ("all",),
        default="direct",
        help="algorithm to run (default: direct; 'all' cross-checks)",
    )
    _add_format_option(sum_p)

    bern_p = sub.add_parser(
        "bernoulli",
        help="tabulate degenerate Bernoulli numbers",
        description="Print the degenerate Bernoulli numbers b_0 .. b_max_n.",
    )
    bern_p.add_argument("--max-n", type=int, required=True, help="last index, >= 0")
    _add_lambda_options(bern_p)
    _add_format_option(bern_p)

    stir_p = sub.add_parser(
        "stirling",
        help="tabulate degenerate Stirling numbers of the second kind",
        description="Print the degenerate Stirling triangle rows 0 .. max_n.",
    )
    stir_p.add_argument("--max-n", type=int, required=True, help="last row, >= 0")
    _add_lambda_options(stir_p)
    _add_format_option(stir_p)

    verify_p = sub.add_parser(
        "verify",
        help="run the full identity registry",
        description=(
            "Run every registered cross-check identity over a grid.  "
            "Parallel fan-out is capped by the DEGENSUM_THREADS environment "
            "variable."
        ),
    )
    verify_p.add_argument("--max-k", type=int, default=8, help="sum order bound")
    verify_p.add_argument("--max-n", type=int, default=12, help="upper-limit bound")
    verify_p.add_argument(
        "--lambdas",
        default="0,1,-1,1/2",
        help="comma-separated rational lambda values",
    )
    verify_p.add_argument(
        "--symbolic",
        action="store_true",
        help="also sweep the six methods symbolically",
    )
    verify_p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    moment_p = sub.add_parser(
        "moment",
        help="degenerate moment of a finite distribution",
        description=(
            "Compute the k-th degenerate moment of a finite nonnegative "
            "integer distribution exactly by both the direct and the "
            "survival-sum route, with an optional seeded Monte Carlo witness."
        ),
    )
    moment_p.add_argument(
        "--dist",
        required=True,
        help="distribution: uniform:N, file:PATH, or a bare JSON path",
    )
    moment_p.add_argument("--k", type=int, required=True, help="moment order k >= 1")
    moment_p.add_argument(
        "--lambda",
        dest="lam",
        required=True,
        metavar="P/Q",
        help="fixed rational lambda",
    )
    moment_p.add_argument(
        "--samples",
        type=int,
        default=0,
        help="Monte Carlo sample count; 0 skips the MC witness (default: 0)",
    )
    moment_p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    _add_format_option(moment_p)

    return parser


def _parse_lambda(parser: argparse.ArgumentParser, text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        parser.error(f"bad rational {text!r}: {exc}")
        raise AssertionError("unreachable")


def _make_ring(parser: argparse.ArgumentParser, args) -> Ring:
    if args.symbolic:
        return PolyRing()
    return RationalRing(_parse_lambda(parser, args.lam))


def _csv_lines(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _cmd_sum(parser, args) -> int:
    if args.k < 1:
        parser.error("--k must be >= 1")
    if args.n < 0:
        parser.error("--n must be >= 0")
    ring = _make_ring(parser, args)
    if args.method == "all":
        report = sum_all_methods(args.k, args.n, ring)
        if args.format == "plain":
            for name in METHOD_NAMES:
                print(f"{name} = {scalar_text(report.values[name])}")
            print(f"agreement = {'true' if report.agreement else 'false'}")
        elif args.format == "json":
            print(json.dumps(report.to_json_dict(), indent=2))
        else:
            rows = [
                (name, scalar_text(report.values[name])) for name in METHOD_NAMES
            ]
            rows.append(("agreement", "true" if report.agreement else "false"))
            sys.stdout.write(_csv_lines(("method", "value"), rows))
        return EX_OK if report.agreement else EX_DISAGREE
    value = sum_by_method(args.method, args.k, args.n, ring)
    text = scalar_text(value)
    if args.format == "plain":
        print(text)
    elif args.format == "json":
        payload = {
            "k": args.k,
            "n": args.n,
            "lambda": ring.lam_description,
            "method": args.method,
            "value": text,
        }
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(_csv_lines(("method", "value"), [(args.method, text)]))
    return EX_OK


def _cmd_bernoulli(parser, args) -> int:
    if args.max_n < 0:
        parser.error("--max-n must be >= 0")
    ring = _make_ring(parser, args)
    values = degen_bernoulli_numbers(args.max_n, ring).prefix(args.max_n)
    texts = [ring.to_text(v) for v in values]
    if args.format == "plain":
        width = len(str(args.max_n))
        for n, text in enumerate(texts):
            print(f"{n:>{width}}  {text}")
    elif args.format == "json":
        payload = {"lambda": ring.lam_description, "values": texts}
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(
            _csv_lines(("n", "value"), [(str(n), t) for n, t in enumerate(texts)])
        )
    return EX_OK


def _cmd_stirling(parser, args) -> int:
    if args.max_n < 0:
        parser.error("--max-n must be >= 0")
    ring = _make_ring(parser, args)
    rows = [
        [ring.to_text(degen_stirling2(n, k, ring)) for k in range(n + 1)]
        for n in range(args.max_n + 1)
    ]
    if args.format == "plain":
        width = len(str(args.max_n))
        for n, row in enumerate(rows):
            print(f"{n:>{width}}: " + " | ".join(row))
    elif args.format == "json":
        payload = {"lambda": ring.lam_description, "rows": rows}
        print(json.dumps(payload, indent=2))
    else:
        flat = [
            (str(n), str(k), text)
            for n, row in enumerate(rows)
            for k, text in enumerate(row)
        ]
        sys.stdout.write(_csv_lines(("n", "k", "value"), flat))
    return EX_OK


def _verify_threads(parser) -> Optional[int]:
    raw = os.environ.get("DEGENSUM_THREADS")
    if raw is None:
        return None
    try:
        threads = int(raw)
    except ValueError:
        threads = 0
    if threads < 1:
        parser.error(f"DEGENSUM_THREADS must be a positive integer, got {raw!r}")
    return threads


def _cmd_verify(parser, args) -> int:
    if args.max_k < 1 or args.max_n < 1:
        parser.error("--max-k and --max-n must be >= 1")
    parts = [p.strip() for p in args.lambdas.split(",") if p.strip()]
    if not parts:
        parser.error("--lambdas must list at least one rational")
    lambdas = [_parse_lambda(parser, p) for p in parts]
    outcome = run_verify(
        max_k=args.max_k,
        max_n=args.max_n,
        lambdas=lambdas,
        symbolic=args.symbolic,
        seed=args.seed,
        threads=_verify_threads(parser),
    )
    for failure in outcome.failures:
        print(
            f"FAIL {failure.identity} [{failure.params}] "
            f"expected={failure.expected} got={failure.got}"
        )
    status = "ok" if outcome.ok else "FAILED"
    print(
        f"verify {status}: {outcome.cases_run} cases, "
        f"{len(outcome.failures)} failures"
    )
    return EX_OK if outcome.ok else EX_DISAGREE


def _load_dist(parser, spec: str):
    if spec.startswith("uniform:"):
        raw = spec[len("uniform:") :]
        try:
            bound = int(raw)
        except ValueError:
            parser.error(f"bad uniform bound {raw!r}")
        if bound < 0:
            parser.error("uniform bound must be >= 0")
        return uniform_pmf(bound)
    path = spec[len("file:") :] if spec.startswith("file:") else spec
    return load_pmf_json(path)


def _cmd_moment(parser, args) -> int:
    if args.k < 1:
        parser.error("--k must be >= 1")
    if args.samples < 0:
        parser.error("--samples must be >= 0")
    lam = _parse_lambda(parser, args.lam)
    try:
        pmf = _load_dist(parser, args.dist)
    except PMFInvariantError as exc:
        print(f"degensum moment: invalid PMF: {exc}", file=sys.stderr)
        return EX_DATAERR
    report = compute_moment_report(
        pmf, args.k, lam, samples=args.samples, seed=args.seed
    )
    if args.format == "plain":
        print(f"exact_direct = {report.exact_direct}")
        print(f"exact_survival = {report.exact_survival}")
        if report.mc_estimate is None:
            print("mc = skipped (samples=0)")
        else:
            print(f"mc_estimate = {report.mc_estimate!r}")
            print(f"mc_stderr = {report.mc_stderr!r}")
            print(f"samples = {report.samples}")
            print(f"seed = {report.seed}")
    elif args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        row = (
            str(report.k),
            str(report.lam),
            str(report.exact_direct),
            str(report.exact_survival),
            "" if report.mc_estimate is None else repr(report.mc_estimate),
            "" if report.mc_stderr is None else repr(report.mc_stderr),
            str(report.samples),
            str(report.seed),
        )
        sys.stdout.write(
            _csv_lines(
                (
                    "k",
                    "lambda",
                    "exact_direct",
                    "exact_survival",
                    "mc_estimate",
                    "mc_stderr",
                    "samples",
                    "seed",
                ),
                [row],
            )
        )
    return EX_OK if report.exact_agreement else EX_DISAGREE


_COMMANDS = {
    "sum": _cmd_sum,
    "bernoulli": _cmd_bernoulli,
    "stirling": _cmd_stirling,
    "verify": _cmd_verify,
    "moment": _cmd_moment,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](parser, args)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EX_OK
        return code if isinstance(code, int) else EX_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line workbench.

Exit codes: 0 all requested checks pass, 1 an identity or comparison failed,
2 usage or config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import _kernels
from .config import Method, QuadConfig, SeriesConfig
from .errors import DomainError, NoisyZ, NonConvergence, PoleError, UsageError, ZetaError
from .harness import (
    PRESETS, emit_report, format_bench, hard_failures, load_grid, run_bench, run_compare,
    run_identity_suite,
)
from .identities import CHECKS
from .representations import evaluate
from .zeros import ScanStats, scan_zeros

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("zetastrip")

SERIES_METHODS = {Method.ETA_REFERENCE, Method.FUNCTIONAL_SERIES, Method.FUNCTIONAL_SERIES_ACCEL}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad arguments already; keep messages on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex_arg(text: str) -> complex:
    try:
        if "," in text:
            re_, im_ = text.split(",")
            return complex(float(re_), float(im_))
        return complex(float(text), 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None


def _range_arg(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'tmin:tmax', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetastrip",
                     description="Evaluate and cross-check zeta(s) in the strip 0 < Re s < 2.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate zeta(s) with one method")
    p.add_argument("--s", required=True, type=_complex_arg, help="point as 're,im'")
    p.add_argument("--method", default=Method.INTEGRAL_NEW_Y.value,
                   choices=[m.value for m in Method])
    p.add_argument("--tol", type=float, default=None,
                   help="absolute tolerance (quadrature abs/rel tol, or series tol)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compare", help="run methods over a grid against the reference")
    p.add_argument("--grid", required=True, help=f"preset ({', '.join(PRESETS)}) or JSON file")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--only", default=None,
                   help=f"comma-separated identity ids ({', '.join(CHECKS)})")
    p.add_argument("--params", default=None, help="JSON file overriding parameter lists")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--strict", action="store_true",
                   help="also fail on recorded measurements of the displayed formulas")

    p = sub.add_parser("zeros", help="scan Z(t) for sign changes on Re s = 1/2")
    p.add_argument("--range", dest="t_range", required=True, type=_range_arg, help="tmin:tmax")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--method", default=Method.INTEGRAL_NEW_Y.value,
                   choices=[m.value for m in Method])
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("bench", help="time methods over a grid")
    p.add_argument("--grid", default="bench", help="preset or JSON file")
    p.add_argument("--repeats", type=int, default=3)
    return parser


def _cmd_eval(args) -> int:
    method = Method(args.method)
    quad, series = None, None
    if args.tol is not None:
        if method in SERIES_METHODS:
            series = SeriesConfig(tol=args.tol, max_terms=300 if method is Method.ETA_REFERENCE else 40)
        else:
            quad = QuadConfig(abs_tol=args.tol, rel_tol=args.tol)
    try:
        out = evaluate(method, args.s, quad, series)
        code = EXIT_OK
    except NonConvergence as exc:
        if exc.outcome is None:
            raise
        out, code = exc.outcome, EXIT_NUMERIC
        log.warning("%s", exc)
    if args.format == "json":
        print(json.dumps({"s": {"re": args.s.real, "im": args.s.imag}, "method": out.method,
                          "value": {"re": out.value.real, "im": out.value.imag},
                          "err_estimate": out.err_estimate, "evals": out.evals,
                          "converged": out.converged, "notes": out.notes}))
    else:
        print(f"zeta({args.s.real:g}{args.s.imag:+g}i) = {out.value.real:.16g}{out.value.imag:+.16g}i")
        print(f"method={out.method} err_estimate={out.err_estimate:.3g} evals={out.evals} "
              f"converged={out.converged}")
        if out.notes:
            print(f"notes: {out.notes}")
    return code


def _cmd_compare(args) -> int:
    grid = load_grid(args.grid)
    rows = run_compare(grid)
    emit_report(rows, args.format, args.out, kind="comparison")
    if any(r.reference.value is None for r in rows):
        return EXIT_NUMERIC
    bad = [(r.s, c.method) for r in rows for c in r.disagreements()]
    for s, m in bad:
        log.error("method %s disagrees with the reference at s = %s", m, s)
    return EXIT_FAIL if bad else EXIT_OK


def _cmd_verify(args) -> int:
    selection = [x.strip() for x in args.only.split(",") if x.strip()] if args.only else None
    if args.only is not None and not selection:
        raise UsageError("--only needs at least one identity id")
    reports = run_identity_suite(selection, args.params)
    emit_report(reports, args.format, args.out, kind="identity")
    failed = hard_failures(reports, strict=args.strict)
    for r in failed:
        log.error("identity %s failed at %s: abs diff %.3g", r.identity_id, r.parameters, r.abs_diff)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_zeros(args) -> int:
    t_min, t_max = args.t_range
    stats = ScanStats()
    brackets = scan_zeros(t_min, t_max, args.step, args.method, stats=stats)
    if args.format == "json":
        print(json.dumps({"method": args.method, "evaluations": stats.evaluations,
                          "max_abs_im": stats.max_abs_im,
                          "zeros": [vars(b) for b in brackets]}, indent=2))
    else:
        print(f"{len(brackets)} sign change(s) of Z on [{t_min:g}, {t_max:g}] "
              f"({stats.evaluations} evaluations, max |Im Z| = {stats.max_abs_im:.2e})")
        for b in brackets:
            print(f"  t = {b.refined_t:.10f}  bracket [{b.t_lo:.4f}, {b.t_hi:.4f}]  "
                  f"|Z| = {b.residual:.2e}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    grid = load_grid(args.grid)
    rows = run_bench(grid, args.repeats)
    print(f"kernel backend: {_kernels.BACKEND}")
    print(format_bench(rows))
    return EXIT_OK


COMMANDS = {"eval": _cmd_eval, "compare": _cmd_compare, "verify": _cmd_verify,
            "zeros": _cmd_zeros, "bench": _cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, PoleError) as exc:
        print(f"zetastrip: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoisyZ, NonConvergence, ZetaError, ArithmeticError) as exc:
        print(f"zetastrip: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"zetastrip: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

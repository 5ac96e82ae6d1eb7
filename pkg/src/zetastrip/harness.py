"""Grid comparisons, the identity suite, benchmarks and report persistence."""

from __future__ import annotations

import csv
import dataclasses
import inspect
import io
import json
import math
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import Method, QuadConfig, SeriesConfig
from .errors import DomainError, NonConvergence, PoleError, PoleGuard, UsageError, ZetaError
from .identities import CHECKS, DEFAULT_PARAMS, IdentityReport, run_check
from .representations import evaluate, validity
from .special import zeta_reference

# agreement test used by compare: |value - ref| <= AGREE_FACTOR * (err + ref_err) + AGREE_FLOOR
AGREE_FACTOR = 10.0
AGREE_FLOOR = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """A (sigma, t) product grid, the methods to run on it, and their budgets.

    Values are sorted and de-duplicated; the pole s = 1 is left out of ``points``.
    """

    sigma_values: tuple = (0.5,)
    t_values: tuple = (0.0,)
    methods: tuple = ()
    quad: QuadConfig = field(default_factory=QuadConfig)
    series: SeriesConfig = field(default_factory=lambda: SeriesConfig(max_terms=40, tol=1e-10))

    def __post_init__(self):
        sig = tuple(sorted({float(x) for x in self.sigma_values}))
        ts = tuple(sorted({float(x) for x in self.t_values}))
        for x in sig:
            if not 0 < x < 2:
                raise UsageError(f"sigma values must lie in (0, 2), got {x}")
        if not all(math.isfinite(t) for t in ts):
            raise UsageError("t values must be finite")
        methods = []
        for m in self.methods:
            try:
                tag = Method(m)
            except ValueError:
                raise UsageError(f"unknown method {m!r}") from None
            if tag not in methods:
                methods.append(tag)
        object.__setattr__(self, "sigma_values", sig)
        object.__setattr__(self, "t_values", ts)
        object.__setattr__(self, "methods", tuple(methods))

    def points(self) -> list[complex]:
        return [complex(x, t) for x in self.sigma_values for t in self.t_values
                if not (x == 1.0 and t == 0.0)]


@dataclass
class MethodCell:
    method: str
    value: complex | None
    err_estimate: float | None
    evals: int
    converged: bool
    status: str


@dataclass
class ComparisonRow:
    s: complex
    reference: MethodCell
    cells: list
    max_abs_deviation: float | None

    def disagreements(self) -> list[MethodCell]:
        """Converged cells farther from the reference than the agreement test allows."""
        if self.reference.value is None:
            return []
        out = []
        for c in self.cells:
            if c.converged and c.value is not None:
                allowed = AGREE_FACTOR * (c.err_estimate + self.reference.err_estimate) + AGREE_FLOOR
                if abs(c.value - self.reference.value) > allowed:
                    out.append(c)
        return out


def _status(exc: Exception) -> str:
    if isinstance(exc, NonConvergence):
        return "nonconvergence"
    if isinstance(exc, PoleGuard):
        return "pole_guard"
    if isinstance(exc, PoleError):
        return "pole"
    if isinstance(exc, DomainError):
        return "domain_error"
    return "error"


def _cell(method: Method, fn) -> MethodCell:
    try:
        out = fn()
        return MethodCell(method.value, out.value, out.err_estimate, out.evals, out.converged, "ok")
    except ZetaError as exc:
        outcome = getattr(exc, "outcome", None)
        if outcome is not None:
            return MethodCell(method.value, outcome.value, outcome.err_estimate, outcome.evals,
                              False, _status(exc))
        return MethodCell(method.value, None, None, 0, False, _status(exc))


def _in_validity(method: Method, s: complex) -> bool:
    lo, hi = validity(method)
    return lo < s.real < hi


def run_compare(grid: GridSpec) -> list[ComparisonRow]:
    """Every method at every grid point next to the reference, ordered by (sigma, t)."""
    rows = []
    for s in grid.points():
        ref = _cell(Method.ETA_REFERENCE, lambda: zeta_reference(s))
        cells = []
        for m in grid.methods:
            if not _in_validity(m, s):
                cells.append(MethodCell(m.value, None, None, 0, False, "skipped"))
                continue
            cells.append(_cell(m, lambda m=m: evaluate(m, s, grid.quad, grid.series)))
        devs = [abs(c.value - ref.value) for c in cells
                if c.converged and c.value is not None and ref.value is not None]
        rows.append(ComparisonRow(s, ref, cells, max(devs) if devs else None))
    return rows


# ---------------------------------------------------------------------------
# identity suite


def _decode_scalar(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(float(v["re"]), float(v["im"]))
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    return v


def load_identity_params(path) -> dict[str, list[dict]]:
    """JSON mapping identity id to a list of keyword dicts; complex as {"re", "im"}."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read params file {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError("params file must hold a JSON object")
    out = {}
    for ident, plist in raw.items():
        if ident not in CHECKS:
            raise UsageError(f"unknown identity {ident!r} in params file")
        if not isinstance(plist, list) or not all(isinstance(p, dict) for p in plist):
            raise UsageError(f"params for {ident} must be a list of objects")
        allowed = inspect.signature(CHECKS[ident]).parameters
        decoded = []
        for p in plist:
            unknown = set(p) - set(allowed)
            if unknown:
                raise UsageError(f"unknown parameter(s) {sorted(unknown)} for {ident}")
            decoded.append({k: _decode_scalar(v) for k, v in p.items()})
        out[ident] = decoded
    return out


def run_identity_suite(selection=None, params_file=None) -> list[IdentityReport]:
    """One report per (identity, parameter tuple), in selection order."""
    selection = list(selection) if selection else list(DEFAULT_PARAMS)
    if not selection:
        raise UsageError("identity selection is empty")
    params = dict(DEFAULT_PARAMS)
    if params_file is not None:
        params.update(load_identity_params(params_file))
    reports = []
    for ident in selection:
        if ident not in CHECKS:
            raise UsageError(f"unknown identity {ident!r}; choose from {', '.join(CHECKS)}")
        for p in params[ident]:
            try:
                reports.append(run_check(ident, p))
            except (TypeError, ValueError) as exc:
                raise UsageError(f"bad parameters {p} for {ident}: {exc}") from None
    return reports


def hard_failures(reports, strict: bool = False) -> list[IdentityReport]:
    """Reports that should have passed but did not (all failures when ``strict``)."""
    return [r for r in reports if not r.passed and (strict or r.expect_pass)]


# ---------------------------------------------------------------------------
# benchmark


@dataclass
class BenchRow:
    s: complex
    method: str
    median_seconds: float
    evals: int
    abs_error: float | None
    converged: bool
    status: str


def run_bench(grid: GridSpec, repeats: int = 3) -> list[BenchRow]:
    """Median wall time, work and achieved error per (point, method)."""
    if repeats < 3:
        raise UsageError("repeats must be at least 3")
    rows = []
    for s in grid.points():
        ref = zeta_reference(s).value
        for m in grid.methods:
            times, cell = [], None
            for _ in range(repeats):
                start = time.perf_counter()
                cell = _cell(m, lambda: evaluate(m, s, grid.quad, grid.series))
                times.append(time.perf_counter() - start)
            err = abs(cell.value - ref) if cell.value is not None else None
            rows.append(BenchRow(s, m.value, statistics.median(times), cell.evals, err,
                                 cell.converged, cell.status))
    return rows


def format_bench(rows: list[BenchRow]) -> str:
    lines = [f"{'s':>18} {'method':<24} {'median_ms':>10} {'evals':>7} {'abs_error':>10} status"]
    for r in rows:
        err = f"{r.abs_error:.2e}" if r.abs_error is not None else "-"
        lines.append(f"{_fmt_s(r.s):>18} {r.method:<24} {1e3 * r.median_seconds:10.3f} "
                     f"{r.evals:7d} {err:>10} {r.status}")
    return "\n".join(lines)


def _fmt_s(s: complex) -> str:
    return f"{s.real:g}{s.imag:+g}i"


# ---------------------------------------------------------------------------
# presets and config files

ACCEPTANCE_SIGMAS = (0.25, 0.5, 0.75, 1.25, 1.75)
ACCEPTANCE_TS = (0.0, 1.0, 5.0, 14.1)
FIRST_ZERO = 14.134725141734694

PRESETS = {
    "acceptance": dict(sigma_values=ACCEPTANCE_SIGMAS, t_values=ACCEPTANCE_TS,
                       methods=tuple(m.value for m in Method if m is not Method.ETA_REFERENCE)),
    "quick": dict(sigma_values=(0.5, 1.5), t_values=(0.0, 5.0),
                  methods=("integral_new_y", "integral_new_x", "functional_series_accel")),
    "zero": dict(sigma_values=(0.5,), t_values=(FIRST_ZERO,),
                 methods=tuple(m.value for m in Method if m is not Method.ETA_REFERENCE)),
    "bench": dict(sigma_values=(0.5,), t_values=(0.0, 14.1),
                  methods=tuple(m.value for m in Method)),
}

_GRID_KEYS = {"sigma_values", "t_values", "methods", "quad", "series"}


def _build_config(cls, raw, name):
    if not isinstance(raw, dict):
        raise UsageError(f"{name} must be an object")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(raw) - names
    if unknown:
        raise UsageError(f"unknown {name} key(s): {sorted(unknown)}")
    try:
        return cls(**raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid {name}: {exc}") from None


def grid_from_dict(raw: dict) -> GridSpec:
    """GridSpec from a decoded config; unknown keys are rejected."""
    if not isinstance(raw, dict):
        raise UsageError("grid config must be a JSON object")
    unknown = set(raw) - _GRID_KEYS
    if unknown:
        raise UsageError(f"unknown grid config key(s): {sorted(unknown)}")
    kwargs = {k: raw[k] for k in ("sigma_values", "t_values", "methods") if k in raw}
    for k, v in kwargs.items():
        if not isinstance(v, list):
            raise UsageError(f"{k} must be a list")
    if "quad" in raw:
        kwargs["quad"] = _build_config(QuadConfig, raw["quad"], "quad")
    if "series" in raw:
        kwargs["series"] = _build_config(SeriesConfig, raw["series"], "series")
    try:
        return GridSpec(**kwargs)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid grid: {exc}") from None


def load_grid(spec: str) -> GridSpec:
    """A preset name or the path of a JSON grid config."""
    if spec in PRESETS:
        return GridSpec(**PRESETS[spec])
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"{spec!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse grid config {spec}: {exc}") from None
    return grid_from_dict(raw)


# ---------------------------------------------------------------------------
# report persistence

COMPARISON_COLUMNS = ("s_re", "s_im", "method", "value_re", "value_im", "err_estimate", "evals",
                      "converged", "status", "ref_re", "ref_im", "max_abs_deviation")
IDENTITY_COLUMNS = ("identity_id", "parameters", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                    "abs_diff", "rel_diff", "passed", "tol_abs", "tol_rel", "expect_pass", "notes")


def _f(x) -> str:
    return "" if x is None else format(float(x), ".17g")


def _pf(text: str):
    return None if text == "" else float(text)


def _bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise UsageError(f"bad boolean {text!r} in report")
    return text == "true"


def _b(flag: bool) -> str:
    return "true" if flag else "false"


def _cx_json(z):
    return None if z is None else {"re": z.real, "im": z.imag}


def _cx_from_json(d):
    return None if d is None else complex(d["re"], d["im"])


def _params_json(params: dict) -> str:
    enc = {k: ({"re": v.real, "im": v.imag} if isinstance(v, complex) else v)
           for k, v in params.items()}
    return json.dumps(enc, sort_keys=True)


def _params_from_json(text: str) -> dict:
    return {k: _decode_scalar(v) for k, v in json.loads(text).items()}


def _cell_csv(s, cell: MethodCell, row: ComparisonRow) -> list[str]:
    ref = row.reference.value
    v = cell.value
    return [_f(s.real), _f(s.imag), cell.method,
            _f(v.real if v is not None else None), _f(v.imag if v is not None else None),
            _f(cell.err_estimate), str(cell.evals), _b(cell.converged), cell.status,
            _f(ref.real if ref is not None else None), _f(ref.imag if ref is not None else None),
            _f(row.max_abs_deviation)]


def comparison_csv(rows: list[ComparisonRow]) -> str:
    """Long format: a line per (s, method), the reference line first for each s."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COMPARISON_COLUMNS)
    for row in rows:
        for cell in [row.reference] + list(row.cells):
            w.writerow(_cell_csv(row.s, cell, row))
    return buf.getvalue()


def parse_comparison_csv(text: str) -> list[ComparisonRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != COMPARISON_COLUMNS:
        raise UsageError("not a comparison report (header mismatch)")
    rows: list[ComparisonRow] = []
    for rec in reader:
        d = dict(zip(COMPARISON_COLUMNS, rec))
        s = complex(float(d["s_re"]), float(d["s_im"]))
        value = None if d["value_re"] == "" else complex(float(d["value_re"]), float(d["value_im"]))
        cell = MethodCell(d["method"], value, _pf(d["err_estimate"]), int(d["evals"]),
                          _bool(d["converged"]), d["status"])
        if not rows or rows[-1].s != s:
            rows.append(ComparisonRow(s, cell, [], _pf(d["max_abs_deviation"])))
        else:
            rows[-1].cells.append(cell)
    return rows


def comparison_json(rows: list[ComparisonRow]) -> str:
    def cell(c: MethodCell):
        return {"method": c.method, "value": _cx_json(c.value), "err_estimate": c.err_estimate,
                "evals": c.evals, "converged": c.converged, "status": c.status}

    data = [{"s": _cx_json(r.s), "reference": cell(r.reference),
             "cells": [cell(c) for c in r.cells], "max_abs_deviation": r.max_abs_deviation}
            for r in rows]
    return json.dumps(data, indent=2) + "\n"


def parse_comparison_json(text: str) -> list[ComparisonRow]:
    def cell(d):
        return MethodCell(d["method"], _cx_from_json(d["value"]), d["err_estimate"], d["evals"],
                          d["converged"], d["status"])

    return [ComparisonRow(_cx_from_json(r["s"]), cell(r["reference"]),
                          [cell(c) for c in r["cells"]], r["max_abs_deviation"])
            for r in json.loads(text)]


def identity_csv(reports: list[IdentityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(IDENTITY_COLUMNS)
    for r in reports:
        w.writerow([r.identity_id, _params_json(r.parameters), _f(r.lhs.real), _f(r.lhs.imag),
                    _f(r.rhs.real), _f(r.rhs.imag), _f(r.abs_diff), _f(r.rel_diff),
                    _b(r.passed), _f(r.tol_abs), _f(r.tol_rel), _b(r.expect_pass), r.notes])
    return buf.getvalue()


def parse_identity_csv(text: str) -> list[IdentityReport]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != IDENTITY_COLUMNS:
        raise UsageError("not an identity report (header mismatch)")
    out = []
    for rec in reader:
        d = dict(zip(IDENTITY_COLUMNS, rec))
        out.append(IdentityReport(
            d["identity_id"], _params_from_json(d["parameters"]),
            complex(float(d["lhs_re"]), float(d["lhs_im"])),
            complex(float(d["rhs_re"]), float(d["rhs_im"])),
            float(d["abs_diff"]), float(d["rel_diff"]), _bool(d["passed"]),
            float(d["tol_abs"]), float(d["tol_rel"]), _bool(d["expect_pass"]), d["notes"]))
    return out


def identity_json(reports: list[IdentityReport]) -> str:
    data = [{"identity_id": r.identity_id, "parameters": json.loads(_params_json(r.parameters)),
             "lhs": _cx_json(r.lhs), "rhs": _cx_json(r.rhs), "abs_diff": r.abs_diff,
             "rel_diff": r.rel_diff, "passed": r.passed, "tol_abs": r.tol_abs,
             "tol_rel": r.tol_rel, "expect_pass": r.expect_pass, "notes": r.notes}
            for r in reports]
    return json.dumps(data, indent=2) + "\n"


def parse_identity_json(text: str) -> list[IdentityReport]:
    return [IdentityReport(d["identity_id"],
                           {k: _decode_scalar(v) for k, v in d["parameters"].items()},
                           _cx_from_json(d["lhs"]), _cx_from_json(d["rhs"]), d["abs_diff"],
                           d["rel_diff"], d["passed"], d["tol_abs"], d["tol_rel"],
                           d["expect_pass"], d["notes"])
            for d in json.loads(text)]


def render_report(items, fmt: str, kind: str | None = None) -> str:
    """CSV or JSON text for comparison rows or identity reports.

    ``kind`` ("comparison" or "identity") is only needed for an empty list.
    """
    items = list(items)
    if kind is None:
        kind = "identity" if items and isinstance(items[0], IdentityReport) else "comparison"
    is_identity = kind == "identity"
    if fmt == "csv":
        return identity_csv(items) if is_identity else comparison_csv(items)
    if fmt == "json":
        return identity_json(items) if is_identity else comparison_json(items)
    raise UsageError(f"unknown format {fmt!r}")


def emit_report(items, fmt: str, dest, kind: str | None = None) -> None:
    """Write a report; ``dest`` of "-" means stdout. LF line endings, UTF-8."""
    text = render_report(items, fmt, kind)
    if str(dest) == "-":
        sys.stdout.write(text)
        return
    with open(dest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parse_report(text: str, fmt: str):
    """Inverse of ``render_report``; the kind is recognised from the content."""
    if fmt == "csv":
        first = text.split("\n", 1)[0]
        if first.startswith("identity_id"):
            return parse_identity_csv(text)
        return parse_comparison_csv(text)
    if fmt == "json":
        data = json.loads(text)
        if data and "identity_id" in data[0]:
            return parse_identity_json(text)
        return parse_comparison_json(text)
    raise UsageError(f"unknown format {fmt!r}")

"""Numeric checks of the supporting identities.

Each check returns an ``IdentityReport``. ``expect_pass`` separates identities
that should hold (the corrected forms) from measurements of the formulas as
displayed, which are recorded whether or not they agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import QuadConfig
from .errors import DomainError, NonConvergence, ZetaError
from .quadrature import Integrand, integrate_real_line_symmetric, integrate_zero_to_inf
from .representations import (
    _power_tail, fermi_calibration, gamma_sum_closed_form, gamma_sum_corrected,
    series_term, slow_tail, zeta_integral_fermi, zeta_ramanujan,
)
from .special import EPS, gamma_complex, zeta_reference

IDENTITY_QUAD = QuadConfig(abs_tol=1e-13, rel_tol=1e-12)

IDENTITIES = (
    "residue_integral", "alternating_sum", "alternating_sum_limit", "sinh_moment",
    "classical_fe", "gamma_sum", "sinh_series", "defect_head_expansion",
    "fermi_ratio", "fermi_corrected", "ramanujan",
)


@dataclass
class IdentityReport:
    """One identity's verdict at one parameter tuple."""

    identity_id: str
    parameters: dict
    lhs: complex
    rhs: complex
    abs_diff: float
    rel_diff: float
    passed: bool
    tol_abs: float
    tol_rel: float
    expect_pass: bool = True
    notes: str = ""


def make_report(identity_id: str, parameters: dict, lhs: complex, rhs: complex, *,
                tol_abs: float = 0.0, tol_rel: float = 0.0, expect_pass: bool = True,
                notes: str = "", ok: bool = True) -> IdentityReport:
    """Build a report; ``ok=False`` forces a failure (e.g. the quadrature gave up)."""
    lhs, rhs = complex(lhs), complex(rhs)
    abs_diff = abs(lhs - rhs)
    if rhs != 0:
        rel_diff = abs_diff / abs(rhs)
    else:
        rel_diff = 0.0 if abs_diff == 0 else math.inf
    passed = ok and (abs_diff <= tol_abs or rel_diff <= tol_rel)
    return IdentityReport(identity_id, dict(parameters), lhs, rhs, abs_diff, rel_diff, passed,
                          tol_abs, tol_rel, expect_pass, notes)


def _quad_or_note(integrand: Integrand, cfg: QuadConfig, symmetric: bool = False):
    """(value, converged, note); quadrature trouble becomes a note, not an exception."""
    run = integrate_real_line_symmetric if symmetric else integrate_zero_to_inf
    try:
        out = run(integrand, cfg)
        return out.value, True, f"quadrature err {out.err_estimate:.2e}, {out.evals} evals"
    except NonConvergence as exc:
        value = exc.outcome.value if exc.outcome is not None else 0j
        return value, False, f"quadrature did not converge: {exc}"
    except DomainError as exc:
        return 0j, False, f"quadrature refused: {exc}"


# ---------------------------------------------------------------------------
# residue integral


def residue_rhs(n: int, b: complex) -> complex:
    """(pi/2) n^(-ib) / sqrt(n) * csc((pi/2)(1/2 + ib))."""
    b = complex(b)
    return (0.5 * math.pi * cmath.exp(-1j * b * math.log(n)) / math.sqrt(n)
            / cmath.sin(0.5 * math.pi * (0.5 + 1j * b)))


def check_residue_integral(n: int, b: complex, cfg: QuadConfig = IDENTITY_QUAD) -> IdentityReport:
    """int_R x^2 x^(-2ib) / (x^4 + n^2) dx against its closed form."""
    b = complex(b)
    q = b.imag
    if not -1.45 < q < 0.45:
        raise DomainError(f"need -3/2 + 0.05 < Im b < 1/2 - 0.05, got b = {b}")
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n}")
    w = 2.0 - 2j * b
    log_n2 = 2.0 * math.log(n)

    def func(x):
        lx = np.log(x)
        return np.exp(w * lx - np.logaddexp(4.0 * lx, log_n2))

    # x^(2+2q) at the origin, x^-(2-2q) at infinity
    integrand = Integrand(func, 2.0 + 2.0 * q, tail_power=2.0 - 2.0 * q, name="residue integrand")
    lhs, ok, note = _quad_or_note(integrand, cfg, symmetric=True)
    return make_report("residue_integral", {"n": n, "b": b}, lhs, residue_rhs(n, b),
                       tol_rel=1e-9, notes=note, ok=ok)


# ---------------------------------------------------------------------------
# alternating sum


_SINH_TAYLOR = tuple(1.0 / math.factorial(2 * n + 1) for n in range(1, 13))


def one_minus_y_over_sinh(y: float) -> float:
    """1 - y/sinh y for real y > 0; (sinh y - y)/sinh y by series when y < 1."""
    y = float(y)
    if y >= 1.0:
        return 1.0 - y / math.sinh(y)
    y2 = y * y
    acc = 0.0
    for c in reversed(_SINH_TAYLOR):
        acc = acc * y2 + c
    return acc * y2 * y / math.sinh(y)


def alternating_sum_rhs(x: float, variant: str = "csch") -> float:
    """(pi x^2 csch(pi x^2) - 1) / (2 x^4), cancellation-free for small x.

    ``csc_as_printed`` uses the circular cosecant instead. At x = 0 the head
    expansion gives the limit -pi^2/12.
    """
    u = math.pi * x * x
    if variant == "csc_as_printed":
        return (u / math.sin(u) - 1.0) / (2.0 * x ** 4)
    if variant != "csch":
        raise ValueError(f"unknown variant {variant!r}")
    if x == 0.0:
        return -math.pi ** 2 / 12.0
    # u csch u - 1 = -(1 - u/sinh u), taken by series near 0
    return -math.pi ** 2 * one_minus_y_over_sinh(u) / (2.0 * u * u)


def alternating_partial_sum(x: float, tail_tol: float = 1e-13) -> tuple[float, int]:
    """sum_{n=1}^N (-1)^n / (x^4 + n^2) with the next term below ``tail_tol``."""
    x4 = x ** 4
    N = max(1, math.ceil(math.sqrt(max(1.0 / tail_tol - x4, 1.0))))
    n = np.arange(N, 0, -1, dtype=float)
    signs = np.where(n % 2 == 0, 1.0, -1.0)
    return float(np.sum(signs / (x4 + n * n))), N


def check_alternating_sum(x: float, variant: str = "csch") -> IdentityReport:
    x = float(x)
    if not x > 0:
        raise DomainError(f"need x > 0, got {x}")
    if math.pi * x * x >= 700.0:
        raise DomainError("pi x^2 >= 700 overflows csch")
    lhs, N = alternating_partial_sum(x)
    rhs = alternating_sum_rhs(x, variant)
    return make_report("alternating_sum", {"x": x, "variant": variant}, lhs, rhs,
                       tol_abs=1e-11, expect_pass=variant == "csch",
                       notes=f"N={N} terms, tail < 1e-13; variant={variant}")


def check_alternating_sum_limit() -> IdentityReport:
    """The x -> 0 limit of the closed form against sum (-1)^n/n^2 = -pi^2/12."""
    return make_report("alternating_sum_limit", {"x": 0.0}, alternating_sum_rhs(0.0),
                       -math.pi ** 2 / 12.0, tol_abs=1e-10,
                       notes="closed form at x = 0 through its head expansion")


# ---------------------------------------------------------------------------
# sinh moments and the sinh series


def _y_over_sinh(y):
    return 2.0 * y * np.exp(-y) / -np.expm1(-2.0 * y)


def sinh_moment_rhs(k: float) -> complex:
    """(2 - 2^-k) Gamma(1+k) zeta(1+k)."""
    return (2.0 - 2.0 ** -k) * gamma_complex(1.0 + k) * zeta_reference(1.0 + k).value


def check_sinh_moment(k: float, cfg: QuadConfig = IDENTITY_QUAD) -> IdentityReport:
    """int_0^inf y^k / sinh y dy = (2 - 2^-k) Gamma(1+k) zeta(1+k)."""
    k = float(k)
    if not k > 0:
        raise DomainError(f"need k > 0, got {k}")
    integrand = Integrand(lambda y: y ** (k - 1.0) * _y_over_sinh(y), k - 1.0,
                          name=f"y^{k}/sinh y")
    lhs, ok, note = _quad_or_note(integrand, cfg)
    return make_report("sinh_moment", {"k": k}, lhs, sinh_moment_rhs(k), tol_rel=1e-10,
                       notes=note, ok=ok)


def defect_series_coefficients(count: int) -> list[Fraction]:
    """Exact c_j with 1 - y/sinh y = sum_j c_j y^(2j), j = 1..count.

    Divides the series sinh(y)/y = sum y^(2n)/(2n+1)! into 1 term by term.
    """
    a = [Fraction(1, math.factorial(2 * n + 1)) for n in range(count + 1)]
    inv = [Fraction(1)]
    for j in range(1, count + 1):
        inv.append(-sum(a[i] * inv[j - i] for i in range(1, j + 1)))
    return [-c for c in inv[1:]]


def check_sinh_series(y: float) -> IdentityReport:
    """sinh(y) - y against sum_{n>=1} y^(2n+1)/(2n+1)! for 0 < y < 2."""
    y = float(y)
    if not 0 < y < 2:
        raise DomainError(f"need 0 < y < 2, got {y}")
    total, term, n = 0.0, y, 0
    while True:
        n += 1
        term *= y * y / ((2 * n) * (2 * n + 1))
        total += term
        # later terms shrink by at least y^2/((2n+2)(2n+3)) < 1/5 each
        if term * 0.25 < 1e-14 * 1e-3:
            break
    return make_report("sinh_series", {"y": y}, total, math.sinh(y) - y, tol_abs=1e-14,
                       notes=f"{n} series terms")


def check_defect_head_expansion(y: float) -> IdentityReport:
    """1 - y/sinh y against y^2/6 - 7y^4/360, with the y^6 term confirmed exactly.

    The tolerance is the size of the first omitted term, 31 y^6 / 15120.
    """
    y = float(y)
    if not 0 < y < 2:
        raise DomainError(f"need 0 < y < 2, got {y}")
    c = defect_series_coefficients(4)
    expected = [Fraction(1, 6), Fraction(-7, 360), Fraction(31, 15120)]
    coeff_ok = c[:3] == expected
    head = y ** 2 / 6.0 - 7.0 * y ** 4 / 360.0
    lhs = one_minus_y_over_sinh(y)
    bound = float(abs(c[2])) * y ** 6
    return make_report("defect_head_expansion", {"y": y}, lhs, head, tol_abs=bound,
                       ok=coeff_ok,
                       notes=f"y^6 coefficient {c[2]} from exact series division "
                             f"({'matches' if coeff_ok else 'does not match'} 31/15120)")


# ---------------------------------------------------------------------------
# classical functional equation


def classical_fe_sides(s: complex, variant: str = "standard") -> tuple[complex, complex]:
    """Both sides of the reflection relation with Gamma(s/2) or the printed Gamma(s/2 - 1)."""
    s = complex(s)
    if not 0 < s.real < 1:
        raise DomainError(f"need 0 < Re s < 1 so both zeta values are in reach, got {s}")
    shift = {"standard": 0.0, "as_printed": -1.0}[variant]
    lp = math.log(math.pi)
    lhs = gamma_complex(0.5 * s + shift) * cmath.exp(-0.5 * s * lp) * zeta_reference(s).value
    r = 1.0 - s
    rhs = gamma_complex(0.5 * r + shift) * cmath.exp(-0.5 * r * lp) * zeta_reference(r).value
    return lhs, rhs


def check_classical_functional_equation(s: complex, variant: str = "standard") -> IdentityReport:
    lhs, rhs = classical_fe_sides(s, variant)
    ratio = lhs / rhs if rhs != 0 else complex("nan")
    return make_report("classical_fe", {"s": complex(s), "variant": variant}, lhs, rhs,
                       tol_rel=1e-9, expect_pass=variant == "standard",
                       notes=f"variant={variant}; LHS/RHS = {ratio.real:.12g}{ratio.imag:+.12g}j")


# ---------------------------------------------------------------------------
# Gamma sum


def gamma_sum_partial(s: complex, N: int) -> tuple[complex, float]:
    """sum_{n<=N} (2 - 2^(s-2n)) Gamma(2n+1-s)/(2n+1)! and its rounding bound."""
    total, rnd = 0j, 0.0
    for n in range(1, N + 1):
        t = series_term(s, n)
        total += t.coef
        rnd += abs(t.coef) * t.rel_round
    return total, rnd


def check_gamma_sum(s: complex, variant: str = "as_printed", tail: str = "resummed",
                    terms: int | None = None) -> IdentityReport:
    """Closed-form Gamma sum against partial sums of its series.

    ``tail="resummed"`` adds sum_{n>N} 2 Gamma(2n+1-s)/(2n+1)! from its Beta
    integral (independent of any closed form) and bounds the small 2^(s-2n)
    remainder; ``tail="bound"`` keeps the bare partial sum and allows the
    power-law tail bound, which is loose for large |Im s|.
    """
    s = complex(s)
    closed = {"as_printed": gamma_sum_closed_form, "corrected": gamma_sum_corrected}[variant]
    rhs = closed(s)
    if tail == "resummed":
        N = terms or 60
        part, rnd = gamma_sum_partial(s, N)
        add, add_err = slow_tail(s, N)
        # |sum_{n>N} 2^(s-2n) R_n| with ratios below q (see the series module)
        sigma, t = s.real, abs(s.imag)
        q = 0.25 * (1.0 + max(0.0, t - 1.0 - sigma) / (2 * N + 4)) ** 2
        r_next = abs(series_term(s, N + 1).ratio)
        geo = 2.0 ** (sigma - 2 * N - 2) * r_next / (1.0 - q) if q < 1 else math.inf
        lhs = part + add
        tol = geo + rnd + add_err
        note = f"N={N} terms plus resummed 2F1 tail; bound {tol:.2e}"
    elif tail == "bound":
        N = terms or 20000
        lhs, rnd = gamma_sum_partial(s, N)
        tol = _power_tail(s, N, with_zeta=False) + rnd
        note = f"N={N} brute-force terms; power-law tail bound {tol:.2e}"
    else:
        raise ValueError(f"unknown tail mode {tail!r}")
    rnd_rhs = 64 * EPS * (1 + abs(s)) * abs(rhs)
    return make_report("gamma_sum", {"s": s, "variant": variant, "tail": tail}, lhs, rhs,
                       tol_abs=tol + rnd_rhs, expect_pass=variant == "corrected",
                       notes=f"variant={variant}; {note}")


# ---------------------------------------------------------------------------
# Fermi-Dirac prefactor and the Ramanujan form


def check_fermi_ratio(s: complex, cfg: QuadConfig | None = None) -> IdentityReport:
    """Measured (printed Fermi form)/oracle against the calibration 2^(s-1)."""
    s = complex(s)
    oracle = zeta_reference(s).value
    try:
        printed = zeta_integral_fermi(s, cfg, as_printed=True)
    except ZetaError as exc:
        return make_report("fermi_ratio", {"s": s}, 0j, 1.0 / fermi_calibration(s),
                           ok=False, notes=f"printed form failed: {exc}")
    ratio = printed.value / oracle
    return make_report("fermi_ratio", {"s": s}, ratio, 1.0 / fermi_calibration(s),
                       tol_rel=1e-9,
                       notes=f"measured as_printed/oracle = {ratio.real:.12g}{ratio.imag:+.12g}j; "
                             "rhs is 2^(s-1)")


def check_fermi_corrected(s: complex, cfg: QuadConfig | None = None) -> IdentityReport:
    s = complex(s)
    oracle = zeta_reference(s).value
    try:
        out = zeta_integral_fermi(s, cfg, as_printed=False)
        value, ok, note = out.value, True, out.notes
    except ZetaError as exc:
        value, ok, note = 0j, False, str(exc)
    return make_report("fermi_corrected", {"s": s}, value, oracle, tol_abs=1e-9, ok=ok,
                       notes=note)


def check_ramanujan(s: complex, variant: str = "shifted_digamma",
                    cfg: QuadConfig | None = None) -> IdentityReport:
    """Ramanujan's integral against the oracle; a divergence refusal is recorded."""
    s = complex(s)
    oracle = zeta_reference(s).value
    try:
        out = zeta_ramanujan(s, cfg, variant=variant)
        value, ok, note = out.value, True, out.notes
    except DomainError as exc:
        value, ok, note = 0j, False, f"DomainError: {exc}"
    except NonConvergence as exc:
        value = exc.outcome.value if exc.outcome is not None else 0j
        ok, note = False, f"NonConvergence: {exc}"
    return make_report("ramanujan", {"s": s, "variant": variant}, value, oracle, tol_abs=1e-9,
                       ok=ok, expect_pass=variant == "shifted_digamma", notes=note)


# ---------------------------------------------------------------------------
# default suite


DEFAULT_PARAMS: dict[str, list[dict]] = {
    "residue_integral": [{"n": n, "b": b} for n in (1, 2, 5, 10)
                         for b in (0, 1, -1, 2, -2, 1 - 0.6j, -0.5 + 0.3j)],
    "alternating_sum": [{"x": x} for x in (0.1, 0.3, 1.0, 2.0)]
                       + [{"x": 1.0, "variant": "csc_as_printed"}],
    "alternating_sum_limit": [{}],
    "sinh_moment": [{"k": k} for k in (1.0, 3.0, 0.5, 2.5)],
    "classical_fe": [{"s": s, "variant": v} for s in (0.3, 0.7, 0.5 + 3j, 0.5)
                     for v in ("standard", "as_printed")],
    "gamma_sum": [{"s": s, "variant": v} for s in (0.5, 0.3 + 2j, 1.5, 0.25 + 10j)
                  for v in ("as_printed", "corrected")],
    "sinh_series": [{"y": y} for y in (1.0, 0.5, 0.1, 1.9)],
    "defect_head_expansion": [{"y": y} for y in (0.1, 0.05)],
    "fermi_ratio": [{"s": s} for s in (2.0, 0.5, 0.5 + 5j)],
    "fermi_corrected": [{"s": s} for s in (2.0, 0.5, 0.5 + 5j)],
    "ramanujan": [{"s": s, "variant": v} for s in (0.5, 0.25)
                  for v in ("shifted_digamma", "as_printed")],
}

CHECKS = {
    "residue_integral": check_residue_integral,
    "alternating_sum": check_alternating_sum,
    "alternating_sum_limit": check_alternating_sum_limit,
    "sinh_moment": check_sinh_moment,
    "classical_fe": check_classical_functional_equation,
    "gamma_sum": check_gamma_sum,
    "sinh_series": check_sinh_series,
    "defect_head_expansion": check_defect_head_expansion,
    "fermi_ratio": check_fermi_ratio,
    "fermi_corrected": check_fermi_corrected,
    "ramanujan": check_ramanujan,
}


def run_check(identity_id: str, params: dict) -> IdentityReport:
    """Run one check; a refusal (domain or pole error) becomes a failed report."""
    try:
        return CHECKS[identity_id](**params)
    except ZetaError as exc:
        return make_report(identity_id, params, 0j, 0j, ok=False,
                           notes=f"{type(exc).__name__}: {exc}")

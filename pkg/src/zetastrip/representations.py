"""Zeta in the strip 0 < Re s < 2 by several independent representations.

Integral forms
--------------
``zeta_integral_new`` evaluates

    zeta(s) = pi^(s-1) sin(pi s/2) / (1 - 2^(1-s)) * I(s),
    I(s)    = int_0^inf y^(-s-1) (1 - y/sinh y) dy.

The integrand only decays like y^(-s-1), so the companion
K(y) = y^(-s-1) (1 - (1+y) e^-y), whose integral is Gamma(2-s)/s, is
subtracted; what remains decays like e^-y and behaves like y^(1-s) at 0.

For |Im s| large the prefactor grows like e^(pi|t|/2) while I(s) shrinks by
cancellation, which double precision cannot resolve on the real axis. The
integration ray is therefore turned to arg y = -sign(t) theta (Cauchy; the
integrand is analytic in Re y > 0 away from the poles i pi k of 1/sinh),
which removes a factor e^(theta |t|) of the cancellation.

The same rotation is used for the exponential and Fermi-Dirac forms.

Series forms
------------
``zeta_functional_series`` sums
    sum_n (2 - 2^(s-2n)) Gamma(2n+1-s)/(2n+1)! zeta(2n+1-s)
whose terms fall off only like n^(-1-Re s). By default the slowly decaying
part sum_{n>N} 2 Gamma(2n+1-s)/(2n+1)! is resummed exactly from its Beta
integral, which reduces to a 2F1(1, s; 2N+3; 1/2) series; the rest of the tail
is geometric and bounded.

``zeta_functional_series_accel`` sums the zeta - 1 version and adds the
closed form of the Gamma sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import EvalOutcome, Method, QuadConfig, SeriesConfig
from .errors import DomainError, NonConvergence, PoleError
from .quadrature import Integrand, integrate_zero_to_inf
from .special import (
    EPS, digamma_real, eta_denominator, gamma_complex, log_gamma, log_minus_digamma,
    zeta_minus_one,
)

STRIP_POLE_GUARD = 1e-8
MAX_RAY_ANGLE = 1.5

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)
LOGPI = math.log(math.pi)


@dataclass(frozen=True)
class StripPoint:
    """A point s with 0 < Re s < 2, off the pole at s = 1."""

    s: complex

    def __post_init__(self):
        s = complex(self.s)
        object.__setattr__(self, "s", s)
        if not 0.0 < s.real < 2.0:
            raise DomainError(f"need 0 < Re s < 2, got {s}")
        if s.real == 1.0 and s.imag == 0.0:
            raise PoleError("s = 1 is the pole of zeta")
        if abs(s - 1.0) <= STRIP_POLE_GUARD:
            raise PoleError(f"s = {s} is within {STRIP_POLE_GUARD} of the pole at 1")

    @classmethod
    def from_b(cls, b: complex) -> StripPoint:
        """s = 1/2 + i b."""
        return cls(0.5 + 1j * complex(b))


def _as_point(p) -> StripPoint:
    return p if isinstance(p, StripPoint) else StripPoint(p)


def ray_angle(t: float) -> float:
    """Rotation magnitude used for Im s = t."""
    return min(MAX_RAY_ANGLE, 0.25 * abs(t))


def _cpow(base_log: float, w: complex) -> complex:
    return cmath.exp(w * base_log)


def new_prefactor(s: complex) -> complex:
    """pi^(s-1) sin(pi s/2) / (1 - 2^(1-s))."""
    return _cpow(LOGPI, s - 1.0) * cmath.sin(0.5 * math.pi * s) / eta_denominator(s)


def _inner_config(cfg: QuadConfig, scale: float) -> QuadConfig:
    return QuadConfig(cfg.abs_tol / scale, cfg.rel_tol, cfg.max_refinements,
                      cfg.split_point, cfg.tail_cutoff_guard)


def _finish(value, err, evals, method, cfg_tol, notes, extra=None, inner_ok=True):
    out = EvalOutcome(value, err, evals, method.value, inner_ok and err <= cfg_tol, notes,
                      extra or {})
    if not out.converged:
        raise NonConvergence(f"{method.value}: error estimate {err:.3g} exceeds tolerance "
                             f"{cfg_tol:.3g}", out)
    return out


def _quad(integrand: Integrand, cfg: QuadConfig, scale: float) -> EvalOutcome:
    """Inner quadrature with abs_tol divided by the prefactor size.

    A non-converged inner result is returned (flagged) so the caller can still
    report the scaled value; ``_finish`` raises afterwards.
    """
    try:
        return integrate_zero_to_inf(integrand, _inner_config(cfg, scale))
    except NonConvergence as exc:
        if exc.outcome is None:
            raise
        return exc.outcome


def _strip_integral(s: complex, cfg: QuadConfig, kernel, exponent: float, method: Method,
                    variable: str) -> EvalOutcome:
    pref = new_prefactor(s)
    theta = ray_angle(s.imag)
    phase = -math.copysign(theta, s.imag) if theta else 0.0
    decay = math.cos(theta)
    integrand = Integrand(lambda r: kernel(r, s, phase), exponent, decay_rate=decay,
                          name=f"{variable}-space strip integrand")
    scale = abs(pref)
    inner = _quad(integrand, cfg, scale)
    # int_0^inf y^(-s-1) (1 - (1+y) e^-y) dy = Gamma(2-s)/s
    companion = gamma_complex(2.0 - s) / s
    value = pref * (inner.value + companion)
    err = scale * (inner.err_estimate + 64 * EPS * (1 + abs(s)) * abs(companion))
    notes = f"ray angle {phase:+.3f} rad; {inner.notes}"
    return _finish(value, err, inner.evals, method, cfg.tolerance(value), notes,
                   {"phase": phase, "prefactor": pref}, inner.converged)


def zeta_integral_new(p, cfg: QuadConfig | None = None) -> EvalOutcome:
    """zeta(s) from the y-space integral of y^(-s-1) (1 - y/sinh y)."""
    cfg = cfg or QuadConfig()
    s = _as_point(p).s
    return _strip_integral(s, cfg, _kernels.f3_integrand, 1.0 - s.real,
                           Method.INTEGRAL_NEW_Y, "y")


def zeta_integral_new_x(p, cfg: QuadConfig | None = None) -> EvalOutcome:
    """Same integral written in x with y = pi x^2 and the hyperbolic cosecant."""
    cfg = cfg or QuadConfig()
    s = _as_point(p).s
    return _strip_integral(s, cfg, _kernels.f2_integrand, 3.0 - 2.0 * s.real,
                           Method.INTEGRAL_NEW_X, "x")


def _check_right_half(s: complex) -> complex:
    s = complex(s)
    if s.real <= 0:
        raise DomainError(f"need Re s > 0, got {s}")
    if abs(s - 1.0) <= STRIP_POLE_GUARD:
        raise PoleError(f"s = {s} is within {STRIP_POLE_GUARD} of the pole at 1")
    return s


def _mellin_rotated(s: complex, cfg: QuadConfig, weight, decay: float, pref: complex,
                    method: Method, notes: str) -> EvalOutcome:
    """pref * int_0^inf y^(s-1) weight(y) dy along a ray turned towards sign(t)."""
    theta = ray_angle(s.imag)
    phase = math.copysign(theta, s.imag) if theta else 0.0
    rot = cmath.exp(1j * phase)
    w = s - 1.0

    def func(r):
        y = r * rot
        return rot * np.exp(w * (np.log(r) + 1j * phase)) * weight(y)

    integrand = Integrand(func, s.real - 1.0, decay_rate=decay * math.cos(theta),
                          name=method.value)
    scale = abs(pref)
    inner = _quad(integrand, cfg, scale)
    value = pref * inner.value
    err = scale * inner.err_estimate
    return _finish(value, err, inner.evals, method, cfg.tolerance(value),
                   f"{notes}; ray angle {phase:+.3f} rad", {"phase": phase, "prefactor": pref},
                   inner.converged)


def _exp_over_cosh(y):
    e2 = np.exp(-2.0 * y)
    return 2.0 * e2 / (1.0 + e2)


def _fermi(y):
    e1 = np.exp(-y)
    return e1 / (1.0 + e1)


def zeta_integral_exp(s: complex, cfg: QuadConfig | None = None) -> EvalOutcome:
    """2^(s-1) / ((1 - 2^(1-s)) Gamma(s)) * int y^(s-1) e^-y / cosh y dy."""
    cfg = cfg or QuadConfig()
    s = _check_right_half(s)
    pref = _cpow(LOG2, s - 1.0) / (eta_denominator(s) * gamma_complex(s))
    return _mellin_rotated(s, cfg, _exp_over_cosh, 2.0, pref, Method.INTEGRAL_EXP,
                           "exponential/cosh form")


def fermi_calibration(s: complex) -> complex:
    """Factor taking the printed Fermi-Dirac prefactor to the one matching zeta.

    The u = 2y substitution that links the two integral forms absorbs the
    2^(s-1) of the exponential form; the Fermi form needs 1/((1-2^(1-s))Gamma(s)).
    """
    return _cpow(LOG2, 1.0 - complex(s))


def zeta_integral_fermi(s: complex, cfg: QuadConfig | None = None,
                        as_printed: bool = False) -> EvalOutcome:
    """Fermi-Dirac integral form, with the printed or the calibrated prefactor."""
    cfg = cfg or QuadConfig()
    s = _check_right_half(s)
    pref = _cpow(LOG2, s - 1.0) / (eta_denominator(s) * gamma_complex(s))
    if as_printed:
        notes = "variant=as_printed (prefactor 2^(s-1) kept)"
    else:
        factor = fermi_calibration(s)
        pref *= factor
        notes = f"variant=corrected (printed prefactor times 2^(1-s) = {factor:.6g})"
    return _mellin_rotated(s, cfg, _fermi, 1.0, pref, Method.INTEGRAL_FERMI, notes)


_vec_log_minus_digamma = np.frompyfunc(log_minus_digamma, 1, 1)
_vec_digamma = np.frompyfunc(digamma_real, 1, 1)


def _log_minus_digamma_shifted(y):
    """log y - psi(1 + y), elementwise."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    big = y >= 8.0
    out[big] = _vec_log_minus_digamma(y[big]).astype(float) - 1.0 / y[big]
    small = ~big
    out[small] = np.log(y[small]) - _vec_digamma(1.0 + y[small]).astype(float)
    return out


def zeta_ramanujan(s: complex, cfg: QuadConfig | None = None,
                   variant: str = "shifted_digamma") -> EvalOutcome:
    """sin(pi s)/pi * int y^-s (log y - psi(.)) dy on 0 < Re s < 1.

    ``as_printed`` uses psi(y), whose -1/y pole at the origin makes the head
    non-integrable; the quadrature's divergence detector rejects it.
    ``shifted_digamma`` uses psi(1 + y).
    """
    cfg = cfg or QuadConfig()
    s = complex(s)
    if not 0.0 <= s.real < 1.0:
        raise DomainError(f"the Ramanujan form is stated for 0 <= Re s < 1, got {s}")
    if s.real == 0.0:
        raise DomainError("at Re s = 0 the y^(-s-1) tail is not integrable")
    if variant == "as_printed":
        bracket = lambda y: _vec_log_minus_digamma(y).astype(float)
    elif variant == "shifted_digamma":
        bracket = _log_minus_digamma_shifted
    else:
        raise ValueError(f"unknown Ramanujan variant {variant!r}")
    w = -s

    def func(y):
        return np.exp(w * np.log(y)) * bracket(y)

    # y^-s log y at the origin; -y^(-s-1)/2 at infinity
    integrand = Integrand(func, -s.real, tail_power=1.0 + s.real, name=f"ramanujan/{variant}")
    pref = cmath.sin(math.pi * s) / math.pi
    scale = max(abs(pref), 1e-300)
    inner = _quad(integrand, cfg, scale)
    value = pref * inner.value
    return _finish(value, scale * inner.err_estimate, inner.evals, Method.RAMANUJAN,
                   cfg.tolerance(value), f"variant={variant}; {inner.notes}",
                   inner_ok=inner.converged)


# ---------------------------------------------------------------------------
# functional-identity series


def gamma_sum_closed_form(s: complex) -> complex:
    """The closed form of sum_n (2 - 2^(s-2n)) Gamma(2n+1-s)/(2n+1)!, as displayed.

    [-1 + 3^s + s(2^s - 2)] Gamma(-s)
        + sqrt(pi) Gamma(1-s) Gamma(s) / (Gamma(1 + s/2) Gamma((1+s)/2))
    """
    s = complex(s)
    two_s, three_s = _cpow(LOG2, s), _cpow(LOG3, s)
    first = (-1.0 + three_s + s * (two_s - 2.0)) * gamma_complex(-s)
    second = (math.sqrt(math.pi) * gamma_complex(1.0 - s) * gamma_complex(s)
              / (gamma_complex(1.0 + 0.5 * s) * gamma_complex(0.5 * (1.0 + s))))
    return first + second


def gamma_sum_corrected(s: complex) -> complex:
    """[3^s - 2^s - 1 + s(2 - 2^s)] Gamma(-s).

    Writing (2 - 2^-k) Gamma(1+k) = int y^k (2e^-y - 2e^-2y) dy and summing
    y^(2n+1)/(2n+1)! to sinh y - y gives the Mellin transform of
    (sinh y - y)(2e^-y - 2e^-2y), a combination of exponentials.
    """
    s = complex(s)
    two_s, three_s = _cpow(LOG2, s), _cpow(LOG3, s)
    return (three_s - two_s - 1.0 + s * (2.0 - two_s)) * gamma_complex(-s)


def _closed_form_rounding(s: complex) -> float:
    two_s, three_s = abs(_cpow(LOG2, s)), abs(_cpow(LOG3, s))
    size = (three_s + two_s + 1.0 + abs(s) * (2.0 + two_s)) * abs(gamma_complex(-s))
    return 64 * EPS * (1.0 + abs(s)) * size


@dataclass
class _Term:
    n: int
    coef: complex       # (2 - 2^(s-2n)) Gamma(2n+1-s)/(2n+1)!
    ratio: complex      # Gamma(2n+1-s)/(2n+1)!
    zeta_m1: complex    # zeta(2n+1-s) - 1
    zeta_err: float
    ratio_bound: float  # Gamma(2n+1-sigma)/(2n+1)! >= |ratio|
    rel_round: float    # relative rounding of coef


def series_term(s: complex, n: int) -> _Term:
    """One term of the functional series, with its pieces kept separate."""
    m = 2 * n + 1 - s
    lg = log_gamma(m) - math.lgamma(2 * n + 2)
    ratio = cmath.exp(lg)
    coef = (2.0 - _cpow(LOG2, s - 2 * n)) * ratio
    zm1, zerr = zeta_minus_one(m)
    bound = math.exp(math.lgamma(2 * n + 1 - s.real) - math.lgamma(2 * n + 2))
    # exp of a log-Gamma difference loses about |lg| ulps
    return _Term(n, coef, ratio, zm1, zerr, bound, EPS * (16.0 + 4.0 * abs(lg)))


def _zeta_real(x: float) -> float:
    """zeta(x) for real x > 1, only used inside error bounds."""
    return 1.0 + zeta_minus_one(x)[0].real


def _geometric_tail(s: complex, N: int) -> tuple[float, float]:
    """Bounds for n > N on sum |R_n| |zeta - 1| and sum 2^(sigma-2n) |R_n| |zeta|.

    R_n = Gamma(2n+1-s)/(2n+1)!. Successive ratios R_(n+1)/R_n = m(m+1)/((2n+2)(2n+3))
    with m = 2n+1-s are at most (1 + max(0, |t|-1-sigma)/(2N+4))^2 for n > N, and
    both zeta(m) - 1 <= 2^-m (1 + 2/(m-1)) and 2^(-2n) shrink fourfold per step,
    so each sum is its first term over 1 - q. Returns inf while q >= 1.
    """
    sigma, t = s.real, abs(s.imag)
    q = 0.25 * (1.0 + max(0.0, t - 1.0 - sigma) / (2 * N + 4)) ** 2
    if q >= 1.0:
        return math.inf, math.inf
    n = N + 1
    m = 2 * n + 1 - sigma
    r = math.exp(log_gamma(2 * n + 1 - s).real - math.lgamma(2 * n + 2))
    zm1 = 2.0 ** -m * (1.0 + 2.0 / (m - 1.0))
    return r * zm1 / (1.0 - q), 2.0 ** (sigma - 2 * n) * r * (1.0 + zm1) / (1.0 - q)


def _power_tail(s: complex, N: int, with_zeta: bool = True) -> float:
    """Bound on sum_{n>N} |(2 - 2^(s-2n)) Gamma(2n+1-s)/(2n+1)! zeta(2n+1-s)|.

    With ``with_zeta=False`` the zeta factor is dropped (the bare Gamma sum).

    Convexity of log Gamma gives Gamma(a)/Gamma(a+1+sigma) <= exp(-(1+sigma)(log a - 1/a)),
    and sum_{n>N} (2n+1-sigma)^(-1-sigma) <= (2N+1-sigma)^(-sigma) / (2 sigma).
    """
    sigma = s.real
    a = 2 * N + 3 - sigma
    growth = math.exp((1.0 + sigma) / a)
    zeta_factor = _zeta_real(a) if with_zeta else 1.0
    return ((2.0 + 2.0 ** (sigma - 2 * N - 2)) * growth * zeta_factor
            * (2 * N + 1 - sigma) ** -sigma / (2.0 * sigma))


def slow_tail(s: complex, N: int) -> tuple[complex, float]:
    """sum_{n>N} 2 Gamma(2n+1-s)/(2n+1)! exactly, with its truncation error.

    The Beta integral gives Gamma(2N+3-s)/(s Gamma(2N+3)) * 2F1(1, s; 2N+3; 1/2)
    after a Pfaff transformation; the 2F1 series converges like 2^-k.
    """
    c = 2 * N + 3
    term, total = 1.0 + 0j, 1.0 + 0j
    k = 0
    while True:
        term *= (s + k) / (c + k) * 0.5
        total += term
        k += 1
        ratio = abs(s + k) / (c + k) * 0.5
        if ratio < 1.0 and abs(term) * ratio / (1.0 - ratio) < 1e-17 * abs(total):
            trunc = abs(term) * ratio / (1.0 - ratio)
            break
        if k > 2000:
            raise NonConvergence(f"2F1 tail series stalled at s = {s}")
    lg = log_gamma(c - s) - math.lgamma(c)
    lead = cmath.exp(lg) / s
    return lead * total, abs(lead) * (trunc + EPS * (8 * k + 4 * abs(lg)) * abs(total))


def _series_loop(s: complex, cfg: SeriesConfig, err_of_n, fixed_terms: int | None = None):
    """Smallest N <= max_terms whose error meets cfg.tol, else the best N.

    ``fixed_terms`` skips the search and uses exactly that many terms.
    """
    if fixed_terms is not None:
        if fixed_terms < 1:
            raise ValueError("fixed_terms must be at least 1")
        err = err_of_n(fixed_terms)
        return fixed_terms, err, err <= cfg.tol
    best = None
    for N in range(1, cfg.max_terms + 1):
        err = err_of_n(N)
        if err <= cfg.tol:
            return N, err, True
        if best is None or err < best[1]:
            best = (N, err)
    return best[0], best[1], False


def _terms(s: complex, N: int, cache: dict) -> list[_Term]:
    for n in range(len(cache) + 1, N + 1):
        cache[n] = series_term(s, n)
    return [cache[n] for n in range(1, N + 1)]


def zeta_functional_series(p, cfg: SeriesConfig | None = None,
                           resum_tail: bool = True,
                           fixed_terms: int | None = None) -> EvalOutcome:
    """zeta(s) from the functional series in Gamma(2n+1-s) zeta(2n+1-s).

    With ``resum_tail`` the slowly decaying part of the remainder is added back
    exactly (see ``slow_tail``) and only a geometric remainder is left to bound.
    Without it the series is cut and the power-law tail bound is all you get,
    which rarely meets a tight tolerance.
    """
    cfg = cfg or SeriesConfig(max_terms=40, tol=1e-10)
    s = _as_point(p).s
    pref = new_prefactor(s)
    scale = abs(pref)
    cache: dict[int, _Term] = {}

    def rounding(N):
        terms = _terms(s, N, cache)
        return sum(abs(t.coef) * (abs(1.0 + t.zeta_m1) * t.rel_round + 2 * t.zeta_err)
                   for t in terms)

    if resum_tail:
        def err_of(N):
            g, h = _geometric_tail(s, N)
            return scale * (2.0 * g + h + rounding(N) + slow_tail(s, N)[1])
    else:
        def err_of(N):
            return scale * (_power_tail(s, N) + rounding(N))

    N, err, ok = _series_loop(s, cfg, err_of, fixed_terms)
    terms = _terms(s, N, cache)
    partial = sum((t.coef * (1.0 + t.zeta_m1) for t in terms), 0j)
    notes = f"N={N}; tail={'resummed 2F1' if resum_tail else 'power-law bound only'}"
    if resum_tail:
        partial += slow_tail(s, N)[0]
    value = pref * partial
    out = EvalOutcome(value, err, N, Method.FUNCTIONAL_SERIES.value, ok, notes)
    if not ok:
        raise NonConvergence(f"functional series: error bound {err:.3g} above tol {cfg.tol:.3g} "
                             f"after {N} terms", out)
    return out


def zeta_functional_series_accel(p, cfg: SeriesConfig | None = None,
                                 closed_form: str = "corrected",
                                 fixed_terms: int | None = None) -> EvalOutcome:
    """zeta(s) from the zeta - 1 series plus the closed-form Gamma sum.

    ``closed_form`` picks the Gamma-sum expression: ``corrected`` (default) or
    ``as_printed``; the notes record which one ran.
    """
    cfg = cfg or SeriesConfig(max_terms=40, tol=1e-10)
    s = _as_point(p).s
    pref = new_prefactor(s)
    scale = abs(pref)
    if closed_form == "corrected":
        gamma_sum = gamma_sum_corrected(s)
    elif closed_form == "as_printed":
        gamma_sum = gamma_sum_closed_form(s)
    else:
        raise ValueError(f"unknown closed form {closed_form!r}")
    cf_round = _closed_form_rounding(s)
    cache: dict[int, _Term] = {}

    def err_of(N):
        g, _ = _geometric_tail(s, N)
        sigma = s.real
        terms = _terms(s, N, cache)
        rnd = sum(abs(t.coef) * (abs(t.zeta_m1) * t.rel_round + t.zeta_err)
                  for t in terms)
        return scale * ((2.0 + 2.0 ** (sigma - 2 * N - 2)) * g + rnd + cf_round)

    N, err, ok = _series_loop(s, cfg, err_of, fixed_terms)
    terms = _terms(s, N, cache)
    value = pref * (sum((t.coef * t.zeta_m1 for t in terms), 0j) + gamma_sum)
    out = EvalOutcome(value, err, N, Method.FUNCTIONAL_SERIES_ACCEL.value, ok,
                      f"N={N}; closed_form={closed_form}")
    if not ok:
        raise NonConvergence(f"accelerated series: error bound {err:.3g} above tol {cfg.tol:.3g} "
                             f"after {N} terms", out)
    return out


# ---------------------------------------------------------------------------
# dispatch


def evaluate(method, s: complex, quad: QuadConfig | None = None,
             series: SeriesConfig | None = None) -> EvalOutcome:
    """Evaluate zeta(s) with the named method using default variants."""
    from .special import zeta_reference

    method = Method(method)
    if method is Method.ETA_REFERENCE:
        return zeta_reference(s, series)
    if method is Method.INTEGRAL_NEW_Y:
        return zeta_integral_new(s, quad)
    if method is Method.INTEGRAL_NEW_X:
        return zeta_integral_new_x(s, quad)
    if method is Method.INTEGRAL_EXP:
        return zeta_integral_exp(s, quad)
    if method is Method.INTEGRAL_FERMI:
        return zeta_integral_fermi(s, quad)
    if method is Method.RAMANUJAN:
        return zeta_ramanujan(s, quad)
    if method is Method.FUNCTIONAL_SERIES:
        return zeta_functional_series(s, series)
    if method is Method.FUNCTIONAL_SERIES_ACCEL:
        return zeta_functional_series_accel(s, series)
    raise ValueError(method)


def validity(method) -> tuple[float, float]:
    """Open interval of Re s on which the method's representation is stated."""
    method = Method(method)
    if method is Method.RAMANUJAN:
        return 0.0, 1.0
    if method in (Method.INTEGRAL_EXP, Method.INTEGRAL_FERMI, Method.ETA_REFERENCE):
        return 0.0, math.inf
    return 0.0, 2.0

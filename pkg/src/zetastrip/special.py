"""Complex Gamma, log-Gamma, real digamma and the reference zeta evaluator.

The reference evaluator sums the alternating (eta) series with Borwein's
binomial weights, which gives geometric convergence on Re s > 0. Everything
else in the package is checked against it.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .config import Acceleration, EvalOutcome, Method, SeriesConfig
from .errors import DomainError, NonConvergence, PoleError, PoleGuard

POLE_TOL = 1e-12
EPS = np.finfo(float).eps

# Lanczos g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_2k for k = 1..10
_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
)
_STIRLING = tuple(float(b / (2 * k * (2 * k - 1))) for k, b in enumerate(_BERNOULLI, 1))
_DIGAMMA_ASYM = tuple(float(b / (2 * k)) for k, b in enumerate(_BERNOULLI, 1))


def _check_pole(z: complex) -> None:
    if z.real < 0.5:
        k = round(z.real)
        if k <= 0 and abs(z - k) < POLE_TOL:
            raise PoleError(f"Gamma has a pole at {k}; argument {z} is within {POLE_TOL}")


def _sin_pi(z: complex) -> complex:
    # reduce by the nearest integer so sin(pi z) keeps relative accuracy near poles
    k = round(z.real)
    val = cmath.sin(math.pi * (z - k))
    return -val if k % 2 else val


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for complex z, with reflection below Re z = 1/2."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return math.pi / (_sin_pi(z) * gamma_complex(1.0 - z))
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def log_gamma(z: complex) -> complex:
    """Principal log-Gamma on Re z > 0 (the branch continuous from the real axis).

    Shifts z up until |z| >= 15, applies the Stirling series there, and
    subtracts the principal logs of the shift factors.
    """
    z = complex(z)
    _check_pole(z)
    if z.real <= 0:
        raise DomainError(f"log_gamma is defined here for Re z > 0, got {z}")
    shift = 0j
    while abs(z) < 15.0:
        shift += cmath.log(z)
        z += 1.0
    inv = 1.0 / z
    inv2 = inv * inv
    series = 0j
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    series *= inv
    return (z - 0.5) * cmath.log(z) - z + _HALF_LOG_2PI + series - shift


def _digamma_tail(x: float) -> float:
    """sum_k B_2k / (2k x^2k), the asymptotic correction for x >= 8."""
    if x > 1e150:
        return 0.0
    inv2 = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_DIGAMMA_ASYM):
        acc = acc * inv2 + c
    return acc * inv2


def digamma_real(y: float) -> float:
    """psi(y) for real y > 0."""
    y = float(y)
    if not y > 0:
        raise DomainError(f"digamma_real needs y > 0, got {y}")
    shift = 0.0
    while y < 8.0:
        shift += 1.0 / y
        y += 1.0
    return math.log(y) - 0.5 / y - _digamma_tail(y) - shift


def log_minus_digamma(y: float) -> float:
    """log(y) - psi(y) for y > 0 without cancellation at large y."""
    y = float(y)
    if not y > 0:
        raise DomainError(f"log_minus_digamma needs y > 0, got {y}")
    if y >= 8.0:
        return 0.5 / y + _digamma_tail(y)
    return math.log(y) - digamma_real(y)


# ---------------------------------------------------------------------------
# reference zeta


@lru_cache(maxsize=512)
def borwein_weights(n: int) -> tuple[np.ndarray, float, float]:
    """Weights (d_n - d_k)/d_n for k < n, plus d_0/d_n and d_n itself.

    The d_k are integers; they are accumulated exactly so the weights are
    correctly rounded.
    """
    fact = math.factorial
    partial = []
    acc = 0
    for i in range(n + 1):
        acc += n * fact(n + i - 1) * 4**i // (fact(n - i) * fact(2 * i))
        partial.append(acc)
    dn = partial[-1]
    w = np.array([float(Fraction(dn - dk, dn)) for dk in partial[:-1]])
    w.setflags(write=False)
    return w, float(Fraction(partial[0], dn)), float(dn)


@lru_cache(maxsize=1024)
def _borwein_dn(n: int) -> float:
    fact = math.factorial
    dn = sum(n * fact(n + i - 1) * 4**i // (fact(n - i) * fact(2 * i)) for i in range(n + 1))
    return float(dn)


def _power_sum(sigma: float, n: int, start: int = 1) -> float:
    """sum_{k=start}^n k^-sigma, used to size the rounding error."""
    return float(np.sum(np.arange(start, n + 1, dtype=float) ** -sigma))


def _rounding(s: complex, n: int, start: int = 1) -> float:
    # each k^-s = exp(-s log k) carries relative error ~ |s| log k eps; the
    # per-term errors are independent, so they add in quadrature
    spread = math.sqrt(_power_sum(2.0 * s.real, n, start))
    return EPS * (4.0 + 2.0 * abs(s) * math.log(n + 1)) * spread


def _check_strip(s: complex) -> complex:
    s = complex(s)
    if abs(s - 1.0) < POLE_TOL:
        raise PoleError(f"zeta has its pole at s = 1; got {s}")
    if s.real <= 0:
        raise DomainError(f"the reference evaluator covers Re s > 0 only, got {s}")
    return s


def eta_denominator(s: complex) -> complex:
    """1 - 2^(1-s), refusing points where it vanishes."""
    den = 1.0 - cmath.exp((1.0 - s) * math.log(2.0))
    if abs(den) < POLE_TOL:
        raise PoleGuard(f"1 - 2^(1-s) vanishes at s = {s}")
    return den


def _pick_terms(cfg: SeriesConfig, err_of) -> tuple[int, float, bool]:
    """Smallest n meeting tol, else the n <= max_terms with least error."""
    best_n, best_err = 1, math.inf
    for n in range(1, cfg.max_terms + 1):
        err = err_of(n)
        if err <= cfg.tol:
            return n, err, True
        if err < best_err:
            best_n, best_err = n, err
    return best_n, best_err, False


def _eta_error_model(s: complex, cfg: SeriesConfig, scale: float):
    sigma = s.real
    if cfg.acceleration is Acceleration.ALTERNATING:
        # |error in eta| <= Gamma(sigma) / (d_n |Gamma(s)|)
        ratio = math.exp(math.lgamma(sigma) - log_gamma(s).real)

        def err_of(n):
            trunc = ratio / _borwein_dn(n)
            return (trunc + _rounding(s, n)) * scale
    else:
        tail_c = 1.0 + abs(s) / sigma

        def err_of(n):
            trunc = tail_c * (n + 1) ** -sigma
            return (trunc + _rounding(s, n)) * scale
    return err_of


def _eta_terms(s: complex, n: int, cfg: SeriesConfig, start: int = 0) -> complex:
    if cfg.acceleration is Acceleration.ALTERNATING:
        weights = borwein_weights(n)[0]
    else:
        weights = np.ones(n)
    return _kernels.alt_weighted_sum(s, weights, start)


def zeta_reference(s: complex, cfg: SeriesConfig | None = None) -> EvalOutcome:
    """zeta(s) on Re s > 0 from the accelerated alternating series."""
    cfg = cfg or SeriesConfig()
    s = _check_strip(s)
    den = eta_denominator(s)
    n, err, ok = _pick_terms(cfg, _eta_error_model(s, cfg, 1.0 / abs(den)))
    value = _eta_terms(s, n, cfg) / den
    out = EvalOutcome(value, err, n, Method.ETA_REFERENCE.value, ok,
                      notes=f"acceleration={cfg.acceleration.value}")
    if not ok:
        raise NonConvergence(f"reference series did not reach tol {cfg.tol} at s = {s} "
                             f"within {cfg.max_terms} terms (best err {err:.3g})", out)
    return out


def zeta_minus_one(s: complex, rel_tol: float = 1e-15, max_terms: int = 300) -> tuple[complex, float]:
    """zeta(s) - 1 and an absolute error bound, for Re s > 0.

    Uses (1 - 2^(1-s)) (zeta - 1) = eta - 1 + 2^(1-s) and folds the first two
    series terms into 2^-s (2 - w_1) and -d_0/d_n exactly, so nothing cancels
    when zeta(s) is close to 1. The truncation error is driven below
    ``rel_tol`` times the leading term 2^-Re(s); rounding is added on top.
    """
    s = _check_strip(s)
    sigma = s.real
    if sigma >= 40.0:
        # sum_{k>=2} k^-s directly; (2/k)^sigma is below 1e-17 by k = 7
        ks = np.arange(2, 8, dtype=float)
        terms = np.exp(-s * np.log(ks))
        tail = 8.0 ** (1.0 - sigma) / (sigma - 1.0)
        return complex(terms[::-1].sum()), tail + 4 * EPS * (1.0 + abs(s)) * abs(terms[0])
    den = eta_denominator(s)
    lead = 2.0 ** -sigma
    ratio = math.exp(math.lgamma(sigma) - log_gamma(s).real)
    for n in range(2, max_terms + 1):
        trunc = ratio / _borwein_dn(n) / abs(den)
        if trunc <= rel_tol * lead:
            break
    else:
        raise NonConvergence(f"zeta(s) - 1 did not reach rel_tol {rel_tol} at s = {s}")
    w, d0_over_dn, _ = borwein_weights(n)
    two_s = cmath.exp(-s * math.log(2.0))
    numer = -d0_over_dn + two_s * (2.0 - w[1]) + _kernels.alt_weighted_sum(s, w, 2)
    rounding = _rounding(s, n, 2) / abs(den)
    return numer / den, trunc + rounding

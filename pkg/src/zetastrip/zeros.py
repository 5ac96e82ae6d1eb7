"""Riemann-Siegel theta, the Z function and a sign-change scan for zeros on Re s = 1/2."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .config import Method, QuadConfig, SeriesConfig
from .errors import DomainError, NoisyZ, UsageError
from .special import log_gamma

IM_Z_LIMIT = 1e-6
T_MAX = 60.0


def riemann_siegel_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t."""
    t = float(t)
    if not t > 0:
        raise DomainError(f"theta is used here for t > 0, got {t}")
    return log_gamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * math.log(math.pi)


def z_function(t: float, method=Method.ETA_REFERENCE, quad: QuadConfig | None = None,
               series: SeriesConfig | None = None) -> complex:
    """Z(t) = e^(i theta(t)) zeta(1/2 + it); real up to evaluation noise."""
    from .representations import evaluate

    zeta = evaluate(method, complex(0.5, t), quad, series).value
    return cmath.exp(1j * riemann_siegel_theta(t)) * zeta


@dataclass
class ZeroBracket:
    """A sign change of Z on [t_lo, t_hi] and the bisected abscissa inside it."""

    t_lo: float
    t_hi: float
    z_lo: float
    z_hi: float
    refined_t: float
    residual: float


@dataclass
class ScanStats:
    evaluations: int = 0
    max_abs_im: float = 0.0


def scan_zeros(t_min: float, t_max: float, step: float, method=Method.INTEGRAL_NEW_Y,
               quad: QuadConfig | None = None, series: SeriesConfig | None = None,
               t_tol: float = 1e-9, stats: ScanStats | None = None) -> list[ZeroBracket]:
    """Bracket sign changes of Z on a uniform grid and bisect each to ``t_tol``.

    Raises ``NoisyZ`` as soon as |Im Z| exceeds 1e-6, which means the chosen
    method is not delivering zeta accurately enough to trust a sign.
    """
    if not 0 < t_min < t_max:
        raise UsageError(f"need 0 < t_min < t_max, got [{t_min}, {t_max}]")
    if t_max > T_MAX:
        raise UsageError(f"t_max is limited to {T_MAX}, got {t_max}")
    if not step > 0:
        raise UsageError(f"step must be positive, got {step}")
    stats = stats if stats is not None else ScanStats()
    method = Method(method)

    def real_z(t: float) -> float:
        z = z_function(t, method, quad, series)
        stats.evaluations += 1
        stats.max_abs_im = max(stats.max_abs_im, abs(z.imag))
        if abs(z.imag) > IM_Z_LIMIT:
            raise NoisyZ(f"|Im Z({t})| = {abs(z.imag):.3g} exceeds {IM_Z_LIMIT} "
                         f"with method {method.value}")
        return z.real

    count = int(math.floor((t_max - t_min) / step + 1e-9))
    grid = [t_min + k * step for k in range(count + 1)]
    if grid[-1] < t_max:
        grid.append(t_max)
    values = [real_z(t) for t in grid]

    brackets = []
    for i in range(len(grid) - 1):
        a, b, za, zb = grid[i], grid[i + 1], values[i], values[i + 1]
        if za == 0.0:
            # an exact grid hit; count it once
            if i == 0 or values[i - 1] != 0.0:
                brackets.append(ZeroBracket(a, b, za, zb, a, 0.0))
            continue
        if za * zb >= 0:
            continue
        lo, hi, zlo = a, b, za
        while hi - lo > t_tol:
            mid = 0.5 * (lo + hi)
            zmid = real_z(mid)
            if zmid == 0.0:
                lo = hi = mid
                break
            if (zmid > 0) == (zlo > 0):
                lo, zlo = mid, zmid
            else:
                hi = mid
        refined = 0.5 * (lo + hi)
        brackets.append(ZeroBracket(a, b, za, zb, refined, abs(real_z(refined))))
    return brackets

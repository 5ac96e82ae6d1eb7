"""Complex quadrature on (0, inf) with an endpoint singularity at 0.

The domain is split at ``split_point`` = a. Both halves are mapped to an
exponentially decaying integrand on [0, U]:

* head (0, a]: y = a e^-u, so a y^p endpoint becomes e^-(p+1)u;
* tail [a, inf): y = a + v for exponential decay, or y = a e^u when the
  integrand only decays like a power.

Each mapped piece is integrated by vectorised adaptive Gauss-Kronrod (7/15);
a panel's error is |K15 - G7|. The cut U is pushed out until the decay bound
on the discarded remainder drops below a tenth of the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import EvalOutcome, QuadConfig
from .errors import DomainError, NonConvergence

EPS = np.finfo(float).eps
# exp(-700) is still a normal double
MAX_LOG_SPAN = 700.0

# Kronrod nodes on [0, 1] (symmetric), Kronrod weights, and the Gauss-7 weights
# for the odd-indexed nodes
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
GAUSS_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class Integrand:
    """A vectorised integrand on y > 0.

    func maps a float array to a complex array. ``exponent`` is the declared p
    with |f(y)| = O(y^p) as y -> 0+. At infinity the caller declares either an
    exponential rate (|f| <~ C e^(-decay_rate y)) or, by setting
    ``tail_power`` = q > 1, algebraic decay |f| ~ y^-q.
    """

    func: Callable[[np.ndarray], np.ndarray]
    exponent: float
    decay_rate: float = 1.0
    tail_power: float | None = None
    name: str = ""

    def __post_init__(self):
        if self.tail_power is None and not self.decay_rate > 0:
            raise ValueError("decay_rate must be positive")
        if self.tail_power is not None and not self.tail_power > 1:
            raise ValueError("tail_power must exceed 1 for an integrable tail")

    def scaled(self, factor: complex) -> Integrand:
        return Integrand(lambda y: factor * self.func(y), self.exponent, self.decay_rate,
                         self.tail_power, self.name)


class _Counter:
    def __init__(self, g):
        self.g = g
        self.calls = 0

    def __call__(self, u):
        self.calls += u.size
        vals = np.asarray(self.g(u), dtype=complex)
        if not np.all(np.isfinite(vals)):
            raise DomainError("integrand returned a non-finite value")
        return vals


def _gk_panels(g, left, right):
    """Kronrod sum, Gauss sum and integral of |g| on each panel."""
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    u = mid[:, None] + half[:, None] * NODES[None, :]
    vals = g(u.ravel()).reshape(u.shape)
    kron = half * (vals @ KRONROD_WEIGHTS)
    gauss = half * (vals @ GAUSS_WEIGHTS)
    absint = half * (np.abs(vals) @ KRONROD_WEIGHTS)
    return kron, gauss, absint


@dataclass
class _Piece:
    value: complex
    err: float
    absint: float
    cut: float
    tail_err: float


def _adaptive(g, upper: float, tol_of, rounds: int, width: float):
    """Adaptive GK15 on [0, upper]; returns value, error, integral of |g|."""
    n0 = max(2, int(math.ceil(upper / width)))
    edges = np.linspace(0.0, upper, n0 + 1)
    left, right = edges[:-1], edges[1:]
    acc_val, acc_err, acc_abs = 0j, 0.0, 0.0
    for level in range(rounds + 1):
        kron, gauss, absint = _gk_panels(g, left, right)
        err = np.abs(kron - gauss)
        floor = 8.0 * EPS * absint
        estimate = acc_val + kron.sum()
        tol = tol_of(estimate)
        if acc_err + err.sum() <= tol or level == rounds:
            return estimate, acc_err + float(np.sum(np.maximum(err, floor))), acc_abs + absint.sum()
        local = tol * (right - left) / upper
        keep = (err <= local) | (err <= floor)
        acc_val += kron[keep].sum()
        acc_err += float(np.sum(np.maximum(err[keep], floor[keep])))
        acc_abs += float(absint[keep].sum())
        split = ~keep
        if not split.any():
            return acc_val, acc_err, acc_abs
        lo, hi = left[split], right[split]
        mid = 0.5 * (lo + hi)
        left = np.concatenate([lo, mid])
        right = np.concatenate([mid, hi])
        order = np.argsort(left, kind="stable")
        left, right = left[order], right[order]
    raise AssertionError("unreachable")


def _decaying(g, rate: float, tol_of, cfg: QuadConfig, guard: float) -> _Piece:
    """Integrate g on [0, inf) given |g(u)| <~ C e^(-rate u)."""
    step = 1.0 / rate
    upper = min(guard, 8.0 * step)

    def tail_bound(cut):
        probe = np.array([cut, cut + 0.5 * step, cut + step])
        return float(np.max(np.abs(g(probe)))) / rate

    # grow the cut until the remainder bound is under a tenth of the tolerance;
    # a first coarse pass supplies the magnitude for the relative part
    value, err, absint = _adaptive(g, upper, tol_of, 0, max(step, 1.0))
    while True:
        bound = tail_bound(upper)
        if bound <= tol_of(value) / 10.0 or upper >= guard:
            break
        upper = min(guard, upper * 1.5)
    value, err, absint = _adaptive(g, upper, tol_of, cfg.max_refinements, min(1.0, 2.0 * step))
    bound = tail_bound(upper)
    return _Piece(value, err + bound, absint, upper, bound)


def _head_divergence(g, rate: float) -> None:
    """Raise if the head keeps growing band after band.

    Four successive bands u in [4.6k, 4.6(k+1)] (two decades of y each) are
    integrated in |g|; monotone non-decreasing band masses mean the y^p
    endpoint is not integrable.
    """
    band = math.log(100.0)
    left = np.arange(4) * band
    _, _, mass = _gk_panels(g, left, left + band)
    ratios = mass[1:] / np.maximum(mass[:-1], np.finfo(float).tiny)
    if np.all(ratios >= 0.98) and mass[-1] > 0:
        raise DomainError(
            "integrand is not integrable at 0: head band masses "
            + ", ".join(f"{m:.3g}" for m in mass) + " grow monotonically")
    # local exponent from two deep samples, as a cross-check on the declared one
    u = np.array([3 * band, 4 * band])
    vals = np.abs(g(u))
    if vals[0] > 0 and vals[1] > 0:
        slope = math.log(vals[1] / vals[0]) / band
        if slope > 0.02:
            raise DomainError(f"head mass grows like y^{-1 - slope:.3g}; the y^p endpoint needs p > -1")


def integrate_zero_to_inf(f: Integrand, cfg: QuadConfig | None = None) -> EvalOutcome:
    """Integral of f over (0, inf) with a nested-rule error estimate."""
    cfg = cfg or QuadConfig()
    if not f.exponent > -1:
        raise DomainError(f"declared endpoint exponent {f.exponent} is not integrable (need p > -1)")
    a = cfg.split_point

    def head(u):
        y = a * np.exp(-u)
        return y * f.func(y)

    if f.tail_power is None:
        def tail(v):
            return f.func(a + v)
        tail_rate = f.decay_rate
        tail_guard = cfg.tail_cutoff_guard - a
    else:
        def tail(u):
            y = a * np.exp(u)
            return y * f.func(y)
        tail_rate = f.tail_power - 1.0
        tail_guard = min(cfg.tail_cutoff_guard, MAX_LOG_SPAN - math.log(a) if a < 1 else MAX_LOG_SPAN)

    head_g, tail_g = _Counter(head), _Counter(tail)
    _head_divergence(head_g, f.exponent + 1.0)

    # each half gets half the budget; relative part uses the running estimate
    def tol_half(estimate):
        return 0.5 * cfg.tolerance(estimate)

    head_guard = min(cfg.tail_cutoff_guard, MAX_LOG_SPAN + math.log(a) if a > 1 else MAX_LOG_SPAN)
    hp = _decaying(head_g, f.exponent + 1.0, tol_half, cfg, head_guard)
    tp = _decaying(tail_g, tail_rate, tol_half, cfg, tail_guard)
    value = hp.value + tp.value
    err = hp.err + tp.err
    tol = cfg.tolerance(value)
    out = EvalOutcome(value, err, head_g.calls + tail_g.calls, "quadrature", err <= tol,
                      notes=f"head cut u={hp.cut:.4g}, tail cut={tp.cut:.4g}",
                      extra={"abs_integral": hp.absint + tp.absint,
                             "truncation": hp.tail_err + tp.tail_err})
    if not out.converged:
        raise NonConvergence(f"quadrature of {f.name or 'integrand'} stopped at err {err:.3g} "
                             f"> tol {tol:.3g}", out)
    return out


def integrate_real_line_symmetric(f: Integrand, cfg: QuadConfig | None = None) -> EvalOutcome:
    """Integral over the whole real line of an even integrand: twice (0, inf)."""
    try:
        half = integrate_zero_to_inf(f, cfg)
    except NonConvergence as exc:
        if exc.outcome is not None:
            exc.outcome = _doubled(exc.outcome)
        raise
    return _doubled(half)


def _doubled(out: EvalOutcome) -> EvalOutcome:
    return EvalOutcome(2.0 * out.value, 2.0 * out.err_estimate, out.evals, out.method,
                       out.converged, out.notes, dict(out.extra))

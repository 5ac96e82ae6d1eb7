"""Pure-Python/NumPy versions of the hot kernels.

Every function here has a twin in ``_core.pyx`` with the same signature and
results equal to rounding; the compiled one is preferred when it imports.
"""

import cmath
import math

import numpy as np

# below this modulus the two defect pieces come from their Taylor series
SERIES_RADIUS = 1.0
# beyond this real part sinh/exp are rewritten in terms of exp(-y)
LARGE_RE = 20.0

# sum_{n>=1} y^(2n-2)/(2n+1)! and sum_{k>=2} (-1)^k (k-1) y^(k-2)/k!
_SINH_COEF = [1.0 / math.factorial(2 * n + 1) for n in range(1, 12)]
_EXP_COEF = [(-1) ** k * (k - 1) / math.factorial(k) for k in range(2, 26)]


def _horner(coef, w):
    acc = np.zeros_like(w)
    for c in reversed(coef):
        acc = acc * w + c
    return acc


def defect(y):
    """D(y) = ((1+y) e^-y - y/sinh y) / y**2, accurate for small |y|.

    y: complex ndarray with Re y > 0.
    """
    y = np.asarray(y, dtype=complex)
    out = np.empty_like(y)
    small = np.abs(y) < SERIES_RADIUS
    big = ~small
    if small.any():
        ys = y[small]
        series = _horner(_SINH_COEF, ys * ys)
        # y/sinh y from its own series: no complex division of tiny numbers
        a = series / (1.0 + ys * ys * series)
        b = _horner(_EXP_COEF, ys)
        out[small] = a - b
    if big.any():
        yb = y[big]
        em = np.exp(-yb)
        far = yb.real > LARGE_RE
        ratio = np.where(far, 2.0 * yb * em / (1.0 - em * em), yb / np.sinh(np.where(far, 1.0, yb)))
        out[big] = ((1.0 + yb) * em - ratio) / (yb * yb)
    return out


def f3_integrand(r, s, phase):
    """Rotated-ray integrand e^{i phase} y^(1-s) D(y), y = r e^{i phase}."""
    r = np.asarray(r, dtype=float)
    rot = cmath.exp(1j * phase)
    y = r * rot
    w = 1.0 - s
    power = np.exp(w * (np.log(r) + 1j * phase))
    return rot * power * defect(y)


def f2_integrand(rho, s, phase):
    """Same integral in x = sqrt(y/pi): e^{i phase/2} 2 pi x y^(1-s) D(y)."""
    rho = np.asarray(rho, dtype=float)
    half = cmath.exp(0.5j * phase)
    y = math.pi * rho * rho * (half * half)
    w = 1.0 - s
    # x y^(1-s) as one power so tiny rho cannot overflow rho^(2w) on its own
    power = np.exp(w * (math.log(math.pi) + 1j * phase) + (2.0 * w + 1.0) * np.log(rho))
    return half * half * 2.0 * math.pi * power * defect(y)


def alt_weighted_sum(s, weights, start=0):
    """sum_{k=start}^{n-1} (-1)^k weights[k] (k+1)^(-s)."""
    s = complex(s)
    total = 0j
    for k in range(len(weights) - 1, start - 1, -1):
        term = weights[k] * cmath.exp(-s * math.log(k + 1))
        total += -term if k & 1 else term
    return total

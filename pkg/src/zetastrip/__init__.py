"""Riemann zeta in the strip 0 < Re s < 2.

Several independent representations (integrals and a functional series)
are evaluated with error estimates and cross-checked against an
accelerated alternating-series reference.
"""

from ._kernels import BACKEND
from .config import Acceleration, EvalOutcome, Method, QuadConfig, SeriesConfig
from .errors import (
    DomainError, NoisyZ, NonConvergence, PoleError, PoleGuard, UsageError, ZetaError,
)
from .quadrature import Integrand, integrate_real_line_symmetric, integrate_zero_to_inf
from .representations import (
    StripPoint, evaluate, zeta_functional_series, zeta_functional_series_accel,
    zeta_integral_exp, zeta_integral_fermi, zeta_integral_new, zeta_integral_new_x,
    zeta_ramanujan,
)
from .special import digamma_real, gamma_complex, log_gamma, zeta_reference
from .zeros import riemann_siegel_theta, scan_zeros, z_function

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Acceleration", "EvalOutcome", "Method", "QuadConfig", "SeriesConfig",
    "DomainError", "NoisyZ", "NonConvergence", "PoleError", "PoleGuard", "UsageError",
    "ZetaError", "Integrand", "integrate_real_line_symmetric", "integrate_zero_to_inf",
    "StripPoint", "evaluate", "zeta_functional_series", "zeta_functional_series_accel",
    "zeta_integral_exp", "zeta_integral_fermi", "zeta_integral_new", "zeta_integral_new_x",
    "zeta_ramanujan", "digamma_real", "gamma_complex", "log_gamma", "zeta_reference",
    "riemann_siegel_theta", "scan_zeros", "z_function", "__version__",
]

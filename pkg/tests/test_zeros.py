import math

import numpy as np
import pytest

from zetastrip.config import Method
from zetastrip.errors import DomainError, NoisyZ, NonConvergence, UsageError
from zetastrip.zeros import ScanStats, riemann_siegel_theta, scan_zeros, z_function


def test_theta_domain():
    for t in (0.0, -1.0):
        with pytest.raises(DomainError):
            riemann_siegel_theta(t)


def test_theta_continuity():
    h = 1e-4
    ts = np.linspace(5, 60, 500)
    jumps = [abs(riemann_siegel_theta(t + h) - riemann_siegel_theta(t)) for t in ts]
    # theta'(t) ~ log(t / 2 pi) / 2 stays below 1.2 on [5, 60]
    assert max(jumps) <= 1.2 * h


def test_theta_single_minimum_below_10():
    ts = np.linspace(0.05, 10, 2000)
    vals = np.array([riemann_siegel_theta(t) for t in ts])
    diffs = np.sign(np.diff(vals))
    changes = np.count_nonzero(diffs[1:] != diffs[:-1])
    assert changes == 1
    assert 6.0 < ts[np.argmin(vals)] < 7.0


def test_theta_asymptotics():
    t = 50.0
    approx = t / 2 * math.log(t / (2 * math.pi)) - t / 2 - math.pi / 8 + 1 / (48 * t)
    assert abs(riemann_siegel_theta(t) - approx) < 1e-5


@pytest.mark.parametrize("t", [5.0, 10.0, 20.0])
def test_z_is_real(t):
    assert abs(z_function(t).imag) <= 1e-8
    assert abs(z_function(t, Method.INTEGRAL_NEW_Y).imag) <= 1e-8


def test_no_zeros_below_ten():
    assert scan_zeros(1.0, 10.0, 0.05) == []


def test_first_zero():
    stats = ScanStats()
    [b] = scan_zeros(14.0, 14.3, 0.05, stats=stats)
    assert b.t_lo <= b.refined_t <= b.t_hi
    assert b.t_hi - b.t_lo <= 0.05 + 1e-12
    assert np.sign(b.z_lo) != np.sign(b.z_hi)
    assert abs(b.refined_t - 14.134725141734694) < 1e-8
    assert b.residual == abs(z_function(b.refined_t, Method.INTEGRAL_NEW_Y).real)
    assert stats.evaluations > 0 and stats.max_abs_im < 1e-6


def test_bracket_count_parity_with_fine_scan():
    coarse = scan_zeros(10.0, 30.0, 0.5, Method.ETA_REFERENCE)
    fine = scan_zeros(10.0, 30.0, 0.05, Method.ETA_REFERENCE)
    assert len(coarse) == len(fine) == 3


@pytest.mark.parametrize("args", [(10.0, 10.0, 0.1), (5.0, 1.0, 0.1), (0.0, 5.0, 0.1),
                                  (10.0, 61.0, 0.1), (10.0, 20.0, 0.0)])
def test_scan_usage_errors(args):
    with pytest.raises(UsageError):
        scan_zeros(*args)


def test_unresolved_method_is_refused():
    # the Ramanujan form cannot resolve zeta at t ~ 14 and says so
    with pytest.raises(NonConvergence):
        scan_zeros(14.0, 14.2, 0.1, Method.RAMANUJAN)


def test_noisy_z_raises(monkeypatch):
    import zetastrip.zeros as zeros

    monkeypatch.setattr(zeros, "z_function", lambda t, *a: complex(math.cos(t), 1e-3))
    with pytest.raises(NoisyZ):
        scan_zeros(1.0, 2.0, 0.1)

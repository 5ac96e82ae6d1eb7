import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetastrip.config import Acceleration, SeriesConfig
from zetastrip.errors import DomainError, NonConvergence, PoleError, PoleGuard
from zetastrip.special import (
    digamma_real, eta_denominator, gamma_complex, log_gamma, zeta_minus_one, zeta_reference,
)

ZETA_HALF = -1.4603545088095868


def rel(a, b):
    return abs(a - b) / abs(b)


# Gamma ---------------------------------------------------------------------

@pytest.mark.parametrize("z, expected", [
    (0.5, math.sqrt(math.pi)),
    (5, 24.0),
    (1, 1.0),
    (10, 362880.0),
    (-0.5, -2 * math.sqrt(math.pi)),
])
def test_gamma_known_values(z, expected):
    assert rel(gamma_complex(z), expected) < 1e-13


def test_gamma_one_plus_i():
    val = gamma_complex(1 + 1j)
    assert abs(val - (0.49801566811835604 - 0.15494982830181069j)) < 1e-13
    with mpmath.workdps(30):
        assert rel(val, complex(mpmath.gamma(1 + 1j))) < 1e-13


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-13])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma_complex(z)


def test_gamma_near_pole_is_finite():
    z = -2 + 1e-9
    assert rel(gamma_complex(z), complex(mpmath.gamma(mpmath.mpf(-2) + mpmath.mpf("1e-9")))) < 1e-6


_cplx = st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False)


def _away_from_poles(z, margin=0.05):
    return not (z.real < 0.5 and abs(z - round(z.real)) < margin) and abs(z) > margin


@settings(max_examples=200, deadline=None)
@given(_cplx)
def test_gamma_recurrence(z):
    if not _away_from_poles(z) or abs(z) > 18:
        return
    assert rel(gamma_complex(z + 1), z * gamma_complex(z)) < 1e-11


@settings(max_examples=200, deadline=None)
@given(_cplx)
def test_gamma_reflection(z):
    if not (_away_from_poles(z) and _away_from_poles(1 - z)) or abs(z.imag) > 15:
        return
    lhs = gamma_complex(z) * gamma_complex(1 - z)
    assert rel(lhs, math.pi / cmath.sin(math.pi * z)) < 1e-10


@settings(max_examples=100, deadline=None)
@given(_cplx)
def test_gamma_conjugate_symmetry(z):
    if not _away_from_poles(z):
        return
    g = gamma_complex(z)
    assert abs(gamma_complex(z.conjugate()) - g.conjugate()) <= 1e-12 * abs(g)


@pytest.mark.parametrize("z", [0.3, 1 + 1j, 2.5 - 7j, 12 + 30j, 0.01 + 0.5j, 40 + 1j])
def test_gamma_against_mpmath(z):
    assert rel(gamma_complex(z), complex(mpmath.gamma(z))) < 1e-12


# log-Gamma -----------------------------------------------------------------

@pytest.mark.parametrize("z, expected", [(1, 0.0), (2, 0.0), (10, 12.801827480081469)])
def test_log_gamma_known(z, expected):
    assert abs(log_gamma(z) - expected) < 1e-13


@pytest.mark.parametrize("z", [0.25 + 7j, 3 - 20j, 0.5 + 49j, 30.0, 1e-3 + 1j])
def test_log_gamma_matches_gamma(z):
    assert rel(cmath.exp(log_gamma(z)), gamma_complex(z)) < 1e-10


def test_log_gamma_principal_branch_continuous():
    # imaginary part must track mpmath's loggamma (the continuous branch) up the line
    for t in np.linspace(0.1, 50, 40):
        z = 0.25 + 0.5j * t
        assert abs(log_gamma(z) - complex(mpmath.loggamma(z))) < 1e-11


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(-0.5 + 1j)
    with pytest.raises(PoleError):
        log_gamma(0)


# digamma -------------------------------------------------------------------

def _euler_gamma_oracle():
    # psi(1) = lim H_n - log n, with the 1/(2n) - 1/(12 n^2) correction
    n = 10**6
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    return -(h - math.log(n) - 1 / (2 * n) + 1 / (12 * n * n))


def test_digamma_values():
    assert abs(digamma_real(2) - digamma_real(1) - 1) < 1e-13
    assert abs(digamma_real(0.5) - digamma_real(1) + 2 * math.log(2)) < 1e-12
    assert abs(digamma_real(1) - _euler_gamma_oracle()) < 1e-12
    assert abs(digamma_real(1) + 0.5772156649015329) < 1e-13


@pytest.mark.parametrize("y", [1e-6, 0.01, 0.7, 3.3, 7.999, 8.0, 8.001, 50.0, 1e5, 1e200])
def test_digamma_against_mpmath(y):
    assert abs(digamma_real(y) - float(mpmath.digamma(y))) <= 1e-12 * max(1.0, abs(float(mpmath.digamma(y))))


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e3))
def test_digamma_recurrence(y):
    assert abs(digamma_real(y + 1) - digamma_real(y) - 1 / y) < 1e-12 * (1 + 1 / y)


def test_digamma_domain():
    for y in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            digamma_real(y)


# reference zeta ------------------------------------------------------------

@pytest.mark.parametrize("s, expected", [
    (2, math.pi**2 / 6),
    (3, 1.2020569031595943),
    (0.5, ZETA_HALF),
    (4, math.pi**4 / 90),
])
def test_reference_values(s, expected):
    out = zeta_reference(s)
    assert out.converged and out.method == "eta_reference"
    assert abs(out.value - expected) < 1e-12
    assert out.err_estimate <= 1e-12


def test_reference_self_consistency_at_half():
    base = zeta_reference(0.5)
    tight = zeta_reference(0.5, SeriesConfig(max_terms=1200, tol=5e-13))
    assert abs(base.value - tight.value) <= base.err_estimate + tight.err_estimate


@pytest.mark.parametrize("s", [0.5 + 14.134725141734694j, 0.25 + 5j, 1.75 - 30j, 0.05 + 1j, 1 + 3j])
def test_reference_against_mpmath(s):
    out = zeta_reference(s)
    assert abs(out.value - complex(mpmath.zeta(s))) <= max(out.err_estimate, 1e-14)


def _zeta_partial_sum(s, n=2000):
    # direct sum plus Euler-Maclaurin tail (error ~ n^(-s-5))
    k = np.arange(1, n, dtype=float)
    head = math.fsum((k ** -s)[::-1])
    tail = n ** (1 - s) / (s - 1) + 0.5 * n ** -s + s * n ** (-s - 1) / 12 \
        - s * (s + 1) * (s + 2) * n ** (-s - 3) / 720
    return head + tail


@pytest.mark.parametrize("s", [1.05, 1.5, 2.0, 3.7, 10.0, 22.5, 30.0])
def test_reference_matches_partial_sums(s):
    assert abs(zeta_reference(s).value - _zeta_partial_sum(s)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 1.95), st.floats(-40, 40))
def test_reference_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    if abs(s - 1) < 1e-3:
        return
    a, b = zeta_reference(s).value, zeta_reference(s.conjugate()).value
    assert abs(b - a.conjugate()) <= 1e-12 * abs(a) + 1e-15


def test_reference_monotone_budget():
    s = 0.3 + 20j
    errs = []
    for max_terms in (2, 5, 10, 20, 40, 80):
        cfg = SeriesConfig(max_terms=max_terms, tol=1e-300)
        with pytest.raises(NonConvergence) as info:
            zeta_reference(s, cfg)
        out = info.value.outcome
        assert out.evals <= max_terms and not out.converged
        errs.append(out.err_estimate)
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_reference_without_acceleration():
    cfg = SeriesConfig(max_terms=300, tol=1e-3, acceleration=Acceleration.NONE)
    out = zeta_reference(2.5, cfg)
    assert abs(out.value - float(mpmath.zeta(2.5))) < 1e-3


def test_reference_errors():
    with pytest.raises(PoleError):
        zeta_reference(1)
    with pytest.raises(DomainError):
        zeta_reference(-0.5)
    with pytest.raises(NonConvergence):
        zeta_reference(0.5 + 50j, SeriesConfig(max_terms=5))


def test_eta_denominator_guard():
    with pytest.raises(PoleGuard):
        eta_denominator(1 + 2j * math.pi / math.log(2))


@pytest.mark.parametrize("s", [2.5, 0.5 + 3j, 40.5, 60 - 2j, 200002.5])
def test_zeta_minus_one(s):
    val, err = zeta_minus_one(s)
    with mpmath.workdps(50):
        exact = complex(mpmath.zeta(s) - 1)
    assert abs(val - exact) <= max(err, 1e-300)

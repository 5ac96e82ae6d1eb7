import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zetastrip.config import QuadConfig
from zetastrip.errors import DomainError, NonConvergence
from zetastrip.quadrature import (
    GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, Integrand, integrate_real_line_symmetric,
    integrate_zero_to_inf,
)

PI4_OVER_8 = math.pi**4 / 8

# (integrand, closed form) pairs on (0, inf)
ANALYTIC = {
    "exp": (Integrand(lambda y: np.exp(-y), 0.0), 1.0),
    "y_over_sinh": (Integrand(lambda y: y / np.sinh(y), 0.0), math.pi**2 / 4),
    "y3_over_sinh": (Integrand(lambda y: y**3 / np.sinh(y), 2.0), PI4_OVER_8),
    "y_exp": (Integrand(lambda y: y * np.exp(-y), 1.0), 1.0),
    "sqrt_exp": (Integrand(lambda y: y**-0.5 * np.exp(-y), -0.5), math.sqrt(math.pi)),
    "algebraic": (Integrand(lambda y: 1 / (1 + y * y), 0.0, tail_power=2.0), math.pi / 2),
}


def test_gauss_kronrod_tables():
    x, w = np.polynomial.legendre.leggauss(7)
    assert np.allclose(NODES[1::2], x, atol=1e-15)
    assert np.allclose(GAUSS_WEIGHTS[1::2], w, atol=1e-15)
    assert np.all(GAUSS_WEIGHTS[::2] == 0)
    assert abs(KRONROD_WEIGHTS.sum() - 2) < 1e-15
    # 15-point Kronrod integrates degree 22 exactly
    for deg in range(0, 23):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(KRONROD_WEIGHTS @ NODES**deg - exact) < 1e-14


@pytest.mark.parametrize("name", sorted(ANALYTIC))
def test_closed_forms_and_honest_estimate(name):
    f, exact = ANALYTIC[name]
    out = integrate_zero_to_inf(f, QuadConfig(abs_tol=1e-12, rel_tol=1e-12))
    assert out.converged
    err = abs(out.value - exact)
    assert err <= 1e-11 * max(1, exact)
    assert err <= 10 * out.err_estimate + 4 * np.finfo(float).eps * exact


def test_pi4_over_8_value():
    # the closed form (2 - 2^-3) Gamma(4) zeta(4) is pi^4/8
    assert abs(PI4_OVER_8 - 12.176136379250303) < 1e-14
    out = integrate_zero_to_inf(ANALYTIC["y3_over_sinh"][0])
    assert abs(out.value - PI4_OVER_8) < 1e-10


@pytest.mark.parametrize("func, tail, exact", [
    (lambda x: np.exp(-x * x), None, math.sqrt(math.pi)),
    (lambda x: x * x / (x**4 + 1), 2.0, math.pi / math.sqrt(2)),
    (lambda x: 1 / (x * x + 1), 2.0, math.pi),
])
def test_real_line_symmetric(func, tail, exact):
    f = Integrand(func, 0.0, tail_power=tail)
    out = integrate_real_line_symmetric(f, QuadConfig(1e-12, 1e-12))
    assert abs(out.value - exact) < 1e-10


@pytest.mark.parametrize("name", ["exp", "y_over_sinh", "y3_over_sinh", "y_exp"])
def test_tolerance_squeeze(name):
    f, exact = ANALYTIC[name]
    floor = 8 * np.finfo(float).eps * exact
    prev = math.inf
    tol = 1e-3
    while tol > 1e-13:
        err = abs(integrate_zero_to_inf(f, QuadConfig(abs_tol=tol, rel_tol=1.0)).value - exact)
        assert err <= max(prev, floor)
        prev = err
        tol /= 2


def test_linearity():
    cfg = QuadConfig(1e-12, 1e-12)
    f, _ = ANALYTIC["y_over_sinh"]
    g, _ = ANALYTIC["y_exp"]
    a, b = 1.5 - 2j, -0.25 + 0.5j
    combo = Integrand(lambda y: a * f.func(y) + b * g.func(y), 0.0)
    of, og, oc = (integrate_zero_to_inf(h, cfg) for h in (f, g, combo))
    bound = abs(a) * of.err_estimate + abs(b) * og.err_estimate + oc.err_estimate
    assert abs(oc.value - (a * of.value + b * og.value)) <= bound + 1e-14


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5))
def test_complex_linearity(a, b):
    c = complex(a, b)
    if abs(c) < 1e-6:
        return
    f, _ = ANALYTIC["y3_over_sinh"]
    base = integrate_zero_to_inf(f).value
    scaled = integrate_zero_to_inf(f.scaled(c), QuadConfig(1e-11 * abs(c), 1e-11)).value
    assert abs(scaled - c * base) <= 1e-13 * abs(c * base)


def test_deterministic():
    f, _ = ANALYTIC["y_over_sinh"]
    assert integrate_zero_to_inf(f).value == integrate_zero_to_inf(f).value


def test_declared_exponent_must_be_integrable():
    with pytest.raises(DomainError):
        integrate_zero_to_inf(Integrand(lambda y: 1 / y, -1.0))


def test_divergence_detector_catches_misdeclared_head():
    # 1/y declared as y^-0.5: the head bands grow without bound
    f = Integrand(lambda y: np.exp(-y) / y, -0.5)
    with pytest.raises(DomainError):
        integrate_zero_to_inf(f)


def test_mild_singularity_is_not_flagged():
    f = Integrand(lambda y: y**-0.9 * np.exp(-y), -0.9)
    out = integrate_zero_to_inf(f, QuadConfig(1e-10, 1e-10))
    assert abs(out.value - math.gamma(0.1)) < 1e-8


def test_nonconvergence_carries_outcome():
    f = Integrand(lambda y: np.sin(40 * y) * np.exp(-0.01 * y), 0.0, decay_rate=0.01)
    with pytest.raises(NonConvergence) as info:
        integrate_zero_to_inf(f, QuadConfig(1e-14, 1e-14, max_refinements=1))
    assert info.value.outcome is not None and not info.value.outcome.converged


def test_nonfinite_integrand():
    with pytest.raises(DomainError):
        integrate_zero_to_inf(Integrand(lambda y: np.full_like(y, np.nan), 0.0))


def test_integrand_validation():
    with pytest.raises(ValueError):
        Integrand(lambda y: y, 0.0, decay_rate=0.0)
    with pytest.raises(ValueError):
        Integrand(lambda y: y, 0.0, tail_power=1.0)


def test_quadconfig_validation():
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0)
    with pytest.raises(ValueError):
        QuadConfig(split_point=900.0)
    with pytest.raises(ValueError):
        QuadConfig(max_refinements=0)

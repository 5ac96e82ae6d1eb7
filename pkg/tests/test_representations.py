import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zetastrip.config import Method, QuadConfig, SeriesConfig
from zetastrip.errors import DomainError, NonConvergence, PoleError, PoleGuard
from zetastrip.representations import (
    StripPoint, evaluate, fermi_calibration, gamma_sum_closed_form, gamma_sum_corrected,
    series_term, validity, zeta_functional_series, zeta_functional_series_accel,
    zeta_integral_exp, zeta_integral_fermi, zeta_integral_new, zeta_integral_new_x,
    zeta_ramanujan,
)
from zetastrip.special import zeta_reference

ZETA_HALF = -1.4603545088095868
ZETA_3_2 = 2.6123753486854883
FIRST_ZERO = 14.134725141734694


def ref(s):
    return zeta_reference(s).value


# StripPoint ----------------------------------------------------------------

def test_strip_point_invariants():
    assert StripPoint(0.5 + 2j).s == 0.5 + 2j
    assert StripPoint.from_b(1 - 0.25j).s == 0.75 + 1j
    for bad in (0.0, 2.0, -0.1 + 1j, 2.5):
        with pytest.raises(DomainError):
            StripPoint(bad)
    with pytest.raises(PoleError):
        StripPoint(1.0)
    with pytest.raises(PoleError):
        StripPoint(1 + 1e-9j)
    assert StripPoint(1 + 1j).s == 1 + 1j


# integral of the new representation ----------------------------------------

@pytest.mark.parametrize("s, expected, tol", [
    (0.5, ZETA_HALF, 1e-10),
    (1.5, ZETA_3_2, 1e-10),
])
def test_integral_new_examples(s, expected, tol):
    out = zeta_integral_new(s)
    assert out.method == Method.INTEGRAL_NEW_Y.value and out.converged
    assert abs(out.value - expected) < tol


def test_integral_new_at_first_zero():
    assert abs(zeta_integral_new(0.5 + FIRST_ZERO * 1j).value) <= 1e-8


def test_integral_new_x_examples():
    assert abs(zeta_integral_new_x(0.5).value - zeta_integral_new(0.5).value) <= 1e-9
    for s in (0.25 + 3j, 1.75):
        out = zeta_integral_new_x(s)
        assert out.method == Method.INTEGRAL_NEW_X.value
        assert abs(out.value - ref(s)) <= 1e-8


@pytest.mark.parametrize("s", [0.1 + 0.5j, 0.9 + 25j, 1.3 - 40j, 1.9 + 3j, 1 + 10j, 0.5 + 60j])
def test_integral_new_wide(s):
    out = zeta_integral_new(s)
    assert abs(out.value - complex(mpmath.zeta(s))) <= max(1e-9, 10 * out.err_estimate)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 1.95), st.floats(-30, 30))
def test_y_and_x_forms_agree(sigma, t):
    s = complex(sigma, t)
    if abs(s - 1) < 1e-3:
        return
    a, b = zeta_integral_new(s), zeta_integral_new_x(s)
    assert abs(a.value - b.value) <= a.err_estimate + b.err_estimate + 1e-14


# classical integrals -------------------------------------------------------

def test_integral_exp_examples():
    assert abs(zeta_integral_exp(2).value - math.pi**2 / 6) < 1e-12
    assert abs(zeta_integral_exp(0.5).value - ZETA_HALF) < 1e-10
    assert abs(zeta_integral_exp(0.5 + 5j).value - ref(0.5 + 5j)) <= 1e-8


def test_integral_fermi_variants():
    out = zeta_integral_fermi(2)
    assert abs(out.value - math.pi**2 / 6) < 1e-12
    assert "corrected" in out.notes
    assert abs(zeta_integral_fermi(0.5).value - ZETA_HALF) < 1e-10
    for s in (2, 0.5, 0.5 + 5j):
        printed = zeta_integral_fermi(s, as_printed=True)
        assert "as_printed" in printed.notes
        ratio = printed.value / ref(s)
        assert abs(ratio - 1 / fermi_calibration(s)) < 1e-9 * abs(ratio)


def test_ramanujan_variants():
    with pytest.raises(DomainError):
        zeta_ramanujan(0.5, variant="as_printed")
    for s in (0.5, 0.25, 0.75 + 1j):
        out = zeta_ramanujan(s)
        assert abs(out.value - ref(s)) < 1e-9
    with pytest.raises(DomainError):
        zeta_ramanujan(1.25)


def test_ramanujan_large_t_reports_nonconvergence():
    # without a rotated path the cancellation at t = 14 is beyond double precision
    with pytest.raises(NonConvergence) as info:
        zeta_ramanujan(0.5 + 14.1j)
    assert info.value.outcome is not None and not info.value.outcome.converged


# functional series ---------------------------------------------------------

def test_series_term_factorization():
    t = series_term(0.5, 1)
    expected = (2 - 2**-1.5) / 6 * math.gamma(2.5)
    assert abs(t.coef - expected) <= t.rel_round * expected
    zeta25 = float(mpmath.zeta(2.5))
    assert abs(t.coef * (1 + t.zeta_m1) - expected * zeta25) < 1e-14


@pytest.mark.parametrize("s, expected", [(0.5, ZETA_HALF), (1.5, ZETA_3_2)])
def test_functional_series_examples(s, expected):
    out = zeta_functional_series(s, SeriesConfig(max_terms=40, tol=1e-6))
    assert out.converged and out.method == Method.FUNCTIONAL_SERIES.value
    assert abs(out.value - expected) < 1e-6


def test_functional_series_power_tail_only():
    # the bare series with a power-law bound needs far more terms
    with pytest.raises(NonConvergence) as info:
        zeta_functional_series(0.5, SeriesConfig(max_terms=40, tol=1e-6), resum_tail=False)
    out = info.value.outcome
    assert abs(out.value - ZETA_HALF) <= out.err_estimate


def test_accel_examples():
    out = zeta_functional_series_accel(0.5, SeriesConfig(max_terms=40, tol=1e-10))
    assert out.evals <= 25 and abs(out.value - ZETA_HALF) < 1e-10
    assert abs(zeta_functional_series_accel(0.25 + 10j).value - ref(0.25 + 10j)) <= 1e-8
    assert abs(zeta_functional_series_accel(1.75).value - ref(1.75)) <= 1e-9


def test_accel_with_printed_closed_form_is_wrong():
    out = zeta_functional_series_accel(0.5, closed_form="as_printed")
    assert "as_printed" in out.notes
    assert abs(out.value - ZETA_HALF) > 1e-3


def test_gamma_sum_closed_forms_conjugate_symmetric():
    for s in (0.5 + 2j, 0.3 - 7j, 1.5 + 0.1j):
        for f in (gamma_sum_closed_form, gamma_sum_corrected):
            assert abs(f(s.conjugate()) - f(s).conjugate()) <= 1e-13 * abs(f(s))


def test_gamma_sum_pole_guard():
    with pytest.raises(PoleError):
        gamma_sum_corrected(1.0)


def test_accel_uses_fewer_terms_than_plain():
    cfg = SeriesConfig(max_terms=400, tol=1e-8)
    accel = zeta_functional_series_accel(0.5, cfg)
    try:
        plain = zeta_functional_series(0.5, cfg, resum_tail=False)
        plain_terms = plain.evals
    except NonConvergence as exc:
        plain_terms = exc.outcome.evals
    assert accel.evals < plain_terms


# cross-cutting -------------------------------------------------------------

METHODS = [Method.INTEGRAL_NEW_Y, Method.INTEGRAL_NEW_X, Method.INTEGRAL_EXP,
           Method.INTEGRAL_FERMI, Method.FUNCTIONAL_SERIES_ACCEL]


def _value_or_flagged(method, s, **kw):
    try:
        return evaluate(method, s, **kw).value
    except NonConvergence as exc:
        return exc.outcome.value


@pytest.mark.parametrize("method", METHODS + [Method.RAMANUJAN, Method.FUNCTIONAL_SERIES])
@pytest.mark.parametrize("s", [0.3 + 1j, 0.7 + 4j])
def test_conjugate_symmetry(method, s):
    series = SeriesConfig(max_terms=40, tol=1e-6)
    a = _value_or_flagged(method, s, series=series)
    b = _value_or_flagged(method, s.conjugate(), series=series)
    assert abs(b - a.conjugate()) <= 1e-10 * abs(a)


@pytest.mark.parametrize("method", METHODS)
def test_prefactor_zero_near_eta_pole(method):
    s0 = 1 + 2j * math.pi / math.log(2)
    with pytest.raises(PoleGuard):
        evaluate(method, s0)
    # slightly off the point: refuse, or return a value whose error estimate is honest
    s = s0 + 1e-5
    try:
        out = evaluate(method, s)
    except PoleGuard:
        return
    except NonConvergence as exc:
        out = exc.outcome
        assert not out.converged
    assert abs(out.value - complex(mpmath.zeta(s))) <= max(1e-12, 10 * out.err_estimate)


def test_validity_ranges():
    assert validity(Method.RAMANUJAN) == (0.0, 1.0)
    assert validity(Method.INTEGRAL_NEW_Y) == (0.0, 2.0)
    assert validity("integral_exp")[1] == math.inf


def test_quadrature_budget_is_reported():
    with pytest.raises(NonConvergence) as info:
        zeta_integral_new(0.5 + 3j, QuadConfig(1e-15, 1e-15, max_refinements=1))
    out = info.value.outcome
    assert out is not None and out.method == Method.INTEGRAL_NEW_Y.value
    assert abs(out.value - ref(0.5 + 3j)) < 1e-3


def test_integral_exp_beyond_strip():
    assert abs(zeta_integral_exp(3).value - 1.2020569031595943) < 1e-12

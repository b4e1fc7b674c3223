"""Tests for the deformed exponentials and the odd-part series identity."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hahncalc import (
    DeformationParams,
    OutOfRadiusError,
    PoleEncounteredError,
    TruncationPolicy,
    exp_q_series,
    exp_qinv_series,
    exp_qw,
    hahn_derivative,
    odd_part_qinv,
    q_factorial,
)

P = DeformationParams(q=0.5, w=0.1)


# ---------------------------------------------------------------------------
# product-form exponential


def test_exp_qw_at_fixed_point():
    for a in (-2.0, 0.3, 1.0):
        assert exp_qw(a, P.w0, P) == pytest.approx(1.0, abs=1e-15)


def test_exp_qw_zero_rate():
    for t in (-1.0, 0.0, 2.5):
        assert exp_qw(0.0, t, P) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("a", [-1.0, 0.7])
@pytest.mark.parametrize("t", [0.0, 0.5, 2.0])
def test_exp_qw_eigenfunction_property(a, t):
    value = hahn_derivative(lambda s: exp_qw(a, s, P), t, P)
    assert value == pytest.approx(a * exp_qw(a, t, P), abs=1e-9)


def test_exp_qw_pole_raises():
    # The first product factor 1 + a((q-1)t + w) vanishes at t = (w + 1/a)/(1-q).
    a = 1.0
    t_pole = (P.w + 1.0 / a) / (1.0 - P.q)
    with pytest.raises(PoleEncounteredError):
        exp_qw(a, t_pole, P)


def test_exp_qw_classical_limit_monotone():
    errors = []
    for eps in (1e-1, 1e-2, 1e-3):
        params = DeformationParams(q=1 - eps, w=eps * eps)
        errors.append(abs(exp_qw(1.0, 1.0, params) - math.e))
    assert errors[0] > errors[1] > errors[2]


# ---------------------------------------------------------------------------
# series exponentials


def test_exp_q_series_at_zero():
    assert exp_q_series(0.0, 0.5) == 1.0


def test_exp_q_series_classical_limit():
    assert exp_q_series(1.0, 0.999) == pytest.approx(math.e, abs=2e-3)


def test_exp_q_series_out_of_radius():
    with pytest.raises(OutOfRadiusError):
        exp_q_series(3.0, 0.5)


def test_exp_q_series_matches_horner_oracle():
    # Reference: the same 100 leading terms evaluated highest-order first.
    x, q = 0.5, 0.5
    coeffs = [1.0 / q_factorial(n, q) for n in range(100)]
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    assert exp_q_series(x, q) == pytest.approx(acc, rel=1e-12)


def test_exp_qinv_series_at_zero():
    assert exp_qinv_series(0.0, 0.5) == 1.0


def test_exp_qinv_series_classical_limit():
    assert exp_qinv_series(1.0, 0.999) == pytest.approx(math.e, abs=2e-3)


def test_exp_qinv_series_matches_term_oracle():
    # Independent accumulation: explicit q^{n(n-1)/2} x^n / [n]_q! terms,
    # summed in reverse order.
    x, q = 2.0, 0.5
    terms = [q ** (n * (n - 1) // 2) * x**n / q_factorial(n, q) for n in range(80)]
    reference = math.fsum(reversed(terms))
    assert exp_qinv_series(x, q) == pytest.approx(reference, rel=1e-12)


@given(x=st.floats(min_value=-30.0, max_value=30.0))
@settings(max_examples=100, deadline=None)
def test_exp_qinv_series_entire(x):
    # The q^{n(n-1)/2} damping makes the series converge for every real x.
    value = exp_qinv_series(x, 0.5)
    assert math.isfinite(value)


def test_series_nonconvergent_budget():
    from hahncalc import NonConvergentError

    with pytest.raises(NonConvergentError):
        exp_qinv_series(5.0, 0.9, TruncationPolicy(tol=1e-14, max_terms=3))


# ---------------------------------------------------------------------------
# odd-part identity


def test_odd_part_at_zero():
    lhs, rhs = odd_part_qinv(0.0, 0.5)
    assert lhs == 0.0
    assert rhs == 0.0


@given(a=st.floats(min_value=-3.0, max_value=3.0))
@settings(max_examples=100, deadline=None)
def test_odd_part_antisymmetry(a):
    lhs_pos, rhs_pos = odd_part_qinv(a, 0.5)
    lhs_neg, rhs_neg = odd_part_qinv(-a, 0.5)
    assert lhs_neg == pytest.approx(-lhs_pos, abs=1e-12)
    assert rhs_neg == pytest.approx(-rhs_pos, abs=1e-12)


@pytest.mark.parametrize("a", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
def test_odd_part_two_paths_agree(a, q):
    lhs, rhs = odd_part_qinv(a, q)
    assert abs(lhs - rhs) < 1e-12


def test_odd_part_lhs_is_series_difference():
    a, q = 1.0, 0.5
    lhs, _ = odd_part_qinv(a, q)
    assert lhs == pytest.approx(exp_qinv_series(a, q) - exp_qinv_series(-a, q), rel=1e-13)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from lpmult.errors import DomainError
from lpmult.specfun import (bessel_j, bessel_j_orders, gamma_tail_constant, log_gamma,
                            reg_gamma_lower, reg_gamma_segment, reg_gamma_upper)


def downward_bessel(max_order, x, start=None):
    """J_0..J_max_order(x) by Miller's downward recurrence, normalized with J_0 + 2 sum J_2k = 1."""
    start = start or (max_order + int(x) + 60)
    start += start % 2
    vals = np.zeros(start + 2)
    vals[start] = 1e-30
    for m in range(start, 0, -1):
        vals[m - 1] = 2.0 * m / x * vals[m] - vals[m + 1]
        if abs(vals[m - 1]) > 1e250:
            vals[m - 1:] *= 1e-250
    norm = vals[0] + 2.0 * vals[2:start + 1:2].sum()
    return vals[:max_order + 1] / norm


# -- log gamma

def test_log_gamma_at_one_is_zero():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)


def test_log_gamma_half_is_log_sqrt_pi():
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-12)


def test_log_gamma_ten_is_log_factorial():
    assert log_gamma(10.0) == pytest.approx(math.log(math.factorial(9)), abs=1e-12)
    assert log_gamma(10.0) == pytest.approx(12.8018274801, abs=1e-10)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e6))
def test_log_gamma_matches_lgamma_relative(x):
    ref = math.lgamma(x)
    assert abs(log_gamma(x) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-1.5)


# -- Bessel

def test_bessel_at_zero():
    assert bessel_j(0, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert bessel_j(3, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_bessel_unimodular_parseval_at_five():
    jv = bessel_j_orders(40, 5.0)
    assert abs(jv[0] ** 2 + 2 * np.sum(jv[1:] ** 2) - 1.0) <= 1e-10


@pytest.mark.parametrize("lam", [1, 2, 5, 10, 25])
def test_bessel_parseval_with_standard_truncation(lam):
    J = math.ceil(2 * lam) + 40
    jv = bessel_j_orders(J, lam)
    assert abs(jv[0] ** 2 + 2 * np.sum(jv[1:] ** 2) - 1.0) <= 1e-9


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 64.0])
def test_bessel_matches_downward_recurrence(x):
    ref = downward_bessel(64, x)
    ours = np.array([bessel_j(k, x) for k in range(65)])
    assert np.max(np.abs(ours - ref)) <= 1e-9
    assert np.max(np.abs(bessel_j_orders(64, x) - ref)) <= 1e-9


def test_bessel_vectorized_matches_scalar():
    xs = np.linspace(0.0, 30.0, 17)
    assert np.allclose(bessel_j(7, xs), [bessel_j(7, x) for x in xs], atol=1e-15)
    assert np.allclose(bessel_j(7, xs), special.jv(7, xs), atol=1e-13)


def test_bessel_rejects_bad_arguments():
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1.5, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1, -1.0)
    with pytest.raises(DomainError):
        bessel_j(1, float("nan"))


# -- incomplete gamma

def test_segment_full_mass():
    assert reg_gamma_segment(1.0, 0.0, math.inf) == pytest.approx(1.0, abs=1e-14)


def test_segment_exponential_half():
    assert reg_gamma_segment(1.0, 0.0, math.log(2.0)) == pytest.approx(0.5, abs=1e-14)


def test_segment_half_is_erf_one():
    assert reg_gamma_segment(0.5, 0.0, 1.0) == pytest.approx(0.8427007929497149, abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(st.floats(min_value=0.05, max_value=30.0), st.floats(min_value=0.0, max_value=60.0))
def test_regularized_gamma_matches_scipy(beta, x):
    assert reg_gamma_lower(beta, x) == pytest.approx(special.gammainc(beta, x), abs=1e-12)
    assert reg_gamma_upper(beta, x) == pytest.approx(special.gammaincc(beta, x), abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(st.floats(min_value=0.1, max_value=10.0),
       st.lists(st.floats(min_value=0.0, max_value=40.0), min_size=3, max_size=3))
def test_segment_additivity(beta, cuts):
    a, b, c = sorted(cuts)
    total = reg_gamma_segment(beta, a, b) + reg_gamma_segment(beta, b, c)
    assert total == pytest.approx(reg_gamma_segment(beta, a, c), abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.1, max_value=10.0), st.floats(min_value=0.0, max_value=50.0),
       st.floats(min_value=0.0, max_value=50.0))
def test_segment_is_a_probability(beta, a, b):
    val = reg_gamma_segment(beta, min(a, b), max(a, b))
    assert 0.0 <= val <= 1.0


def test_segment_rejects_reversed_bounds():
    with pytest.raises(DomainError):
        reg_gamma_segment(1.0, 2.0, 1.0)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.5])
def test_tail_estimate_with_scanned_constant(beta):
    C = gamma_tail_constant(beta)
    for x in (1.0, 2.0, 5.0, 10.0):
        lhs = math.gamma(beta) * reg_gamma_segment(beta, x, math.inf)
        assert lhs <= C * x ** (beta - 1) * math.exp(-x) * (1 + 1e-12)


def test_tail_constant_for_exponential_is_one():
    # Gamma(1) Q(1, x) = e^-x exactly
    assert gamma_tail_constant(1.0) == pytest.approx(1.0, rel=1e-12)

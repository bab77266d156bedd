import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from lpmult.errors import DomainError
from lpmult.gammaconst import gamma_const
from lpmult.testfn import (EPSILON_GRID, TestFnParams, fourier_radial, g_radial, harmonic_lp_norm,
                           lowercomp_norms)

P43 = TestFnParams(2, 4 / 3, 1e-2, 2)


@pytest.fixture(scope="module")
def sweep():
    return [lowercomp_norms(TestFnParams(2, 4 / 3, e, 2)) for e in EPSILON_GRID]


def test_radial_factor_deep_interior():
    params = TestFnParams(2, 4 / 3, 1e-3, 2)
    assert g_radial(params, 1.0) * 1.0 ** (2 / params.p) == pytest.approx(1.0, abs=1e-6)


def test_radial_factor_vanishes_at_origin():
    params = TestFnParams(2, 4 / 3, 1e-2, 2)
    # below the window the factor decays like rho^j
    vals = [g_radial(params, r) for r in (1e-6, 1e-8, 1e-10)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-12
    assert vals[1] / vals[2] == pytest.approx(1e4, rel=1e-6)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-6, max_value=1e6), st.sampled_from(EPSILON_GRID),
       st.sampled_from([1.1, 4 / 3, 1.7, 2.0]), st.integers(min_value=0, max_value=4))
def test_radial_factor_below_pure_power(rho, eps, p, j):
    params = TestFnParams(2, p, eps, j)
    assert 0.0 <= g_radial(params, rho) <= rho ** (-2 / p) * (1 + 1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-4, max_value=1e4), st.sampled_from([1.2, 4 / 3, 1.5]))
def test_p_q_swap_gives_identical_profile(rho, p):
    params = TestFnParams(2, p, 1e-2, 2)
    assert fourier_radial(params, rho) == g_radial(params.swapped(), rho)


@pytest.mark.parametrize("n,j,p", [(2, 2, 4 / 3), (2, 3, 1.5), (4, 2, 4 / 3), (4, 0, 2.0), (6, 4, 1.2)])
def test_harmonic_norm_matches_quadrature(n, j, p):
    # on S^(n-1) with s = |x_1 + i x_2|^2 ~ Beta(1, (n-2)/2) and a uniform angle
    area = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
    ang = quad(lambda t: abs(math.cos(j * t)) ** p, 0, 2 * math.pi, limit=200)[0] / (2 * math.pi)
    if n == 2:
        rad = 1.0
    else:
        b = (n - 2) / 2
        rad = quad(lambda s: s ** (j * p / 2) * b * (1 - s) ** (b - 1), 0, 1)[0]
    assert harmonic_lp_norm(n, j, p) == pytest.approx((area * ang * rad) ** (1 / p), rel=1e-10)


def test_frozen_norms_against_scipy_oracle():
    # reference values from scipy.special.gammainc + adaptive quad in log rho
    r = lowercomp_norms(P43)
    assert r.err_p == pytest.approx(2.1079982072322, rel=1e-9)
    assert r.norm_p == pytest.approx(13.699036525885, rel=1e-9)
    assert r.norm_y_p == pytest.approx(2.6368913165719, rel=1e-12)
    assert r.converged and r.residual <= 1e-9


def test_error_terms_do_not_depend_on_epsilon(sweep):
    for attr in ("err_p", "err_q"):
        vals = [getattr(r, attr) for r in sweep]
        assert max(vals) / min(vals) < 3
    assert [r.err_p for r in sweep] == pytest.approx([2.10799842, 2.10799821, 2.10799821, 2.10799821], rel=1e-7)


def test_norm_asymptotics_improve(sweep):
    dev = [abs(r.norm_p / r.main_p - 1) for r in sweep]
    assert all(b < a for a, b in zip(dev, dev[1:]))
    assert dev[-1] <= 0.1


def test_fourier_side_prefactor(sweep):
    r = sweep[-1]
    q = P43.q
    expected = gamma_const(2, 2, 2 / q) * r.norm_y_q * (2 * math.log(1e4)) ** (1 / q)
    assert r.main_q == pytest.approx(expected, rel=1e-12)
    assert abs(r.norm_q / r.main_q - 1) <= 0.1


def test_regime_integrals_bounded_uniformly(sweep):
    for key in ("below_window", "above_window", "lower_defect", "upper_defect"):
        for side in ("regimes_p", "regimes_q"):
            vals = [getattr(r, side)[key] for r in sweep]
            assert all(math.isfinite(v) for v in vals)
            assert max(vals) <= 2 * min(vals) + 1e-12
            assert max(vals) < 10


def test_l2_slope_against_log_epsilon():
    vals = [lowercomp_norms(TestFnParams(2, 2.0, e, 0)).norm_p ** 2 for e in EPSILON_GRID]
    logs = [math.log(1 / e) for e in EPSILON_GRID]
    slope = np.polyfit(logs[1:], vals[1:], 1)[0]
    assert slope == pytest.approx(4 * math.pi, rel=0.02)


@pytest.mark.parametrize("kw", [dict(p=1.0), dict(p=2.5), dict(epsilon=0.0), dict(epsilon=0.7), dict(n=1),
                                dict(j=-1)])
def test_invalid_parameters(kw):
    args = dict(n=2, p=4 / 3, epsilon=1e-2, j=2)
    args.update(kw)
    with pytest.raises(DomainError):
        TestFnParams(**args)


def test_rho_must_be_positive():
    with pytest.raises(DomainError):
        g_radial(P43, 0.0)

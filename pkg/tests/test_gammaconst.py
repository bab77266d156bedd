import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lpmult.errors import DomainError
from lpmult.gammaconst import (GammaKey, gamma_asymptotic_limit, gamma_asymptotic_ratio, gamma_const,
                               log_gamma_const, sphere_area)


def alpha_grid(n):
    return [0.0, n / 4, n / 2, 3 * n / 4, float(n)]


def test_middle_exponent_is_one():
    assert gamma_const(2, 0, 1.0) == pytest.approx(1.0, abs=1e-15)


def test_symmetry_example_dim4():
    assert gamma_const(4, 7, 1.3) * gamma_const(4, 7, 2.7) == pytest.approx(1.0, abs=1e-11)


def test_hand_value_one_over_pi():
    assert gamma_const(2, 2, 2.0) == pytest.approx(1 / math.pi, abs=1e-10)


def test_circle_exponent_one_ratio_is_exactly_one():
    for j in (1, 5, 100, 4096):
        assert gamma_asymptotic_ratio(2, j, 1.0) == 1.0


def test_asymptotic_ratio_hand_values():
    assert gamma_asymptotic_ratio(2, 512, 2.0) == pytest.approx(256 / (512 * math.pi), abs=1e-6)
    assert gamma_asymptotic_ratio(4, 256, 0.0) == pytest.approx(math.pi ** 2 * 256 ** 2 / (128 * 129), abs=1e-9)
    assert gamma_asymptotic_ratio(4, 256, 0.0) == pytest.approx(39.17, abs=0.01)


def test_symmetry_grid():
    worst = 0.0
    for n in (2, 3, 4, 6):
        for j in range(129):
            for a in alpha_grid(n):
                if j == 0 and a in (0.0, n):
                    continue
                worst = max(worst, abs(gamma_const(n, j, a) * gamma_const(n, j, n - a) - 1.0))
    assert worst <= 1e-10


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=12), st.integers(min_value=1, max_value=4096),
       st.floats(min_value=0.0, max_value=1.0))
def test_symmetry_property(n, j, frac):
    a = frac * n
    assert gamma_const(n, j, a) * gamma_const(n, j, n - a) == pytest.approx(1.0, abs=1e-10)


def test_monotone_convergence_of_asymptotic_ratio():
    for n in (2, 3, 4, 6):
        for a in alpha_grid(n):
            if a == n / 2:
                continue
            lim = gamma_asymptotic_limit(n, a)
            far = abs(gamma_asymptotic_ratio(n, 256, a) - lim)
            near = abs(gamma_asymptotic_ratio(n, 16, a) - lim)
            if n == 2 and a in (0.0, 2.0):
                # gamma_{2,j,0} = 2 pi / j and gamma_{2,j,2} = j / (2 pi): the ratio is exact for all j
                assert far <= 1e-12 * lim and near <= 1e-12 * lim
            else:
                assert far < near


def test_asymptotic_ratio_within_one_percent_at_512():
    for n in (2, 4):
        for a in (0.0, n / 2, float(n)):
            lim = (2 * math.pi) ** (n / 2 - a)
            assert abs(gamma_asymptotic_ratio(n, 512, a) - lim) <= 0.01 * lim


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_small_alpha_window(n):
    # gamma(n,0,a) a/(n-a) sweeps monotonically between the two endpoint limits
    # V_n = pi^(n/2)/Gamma(n/2+1) (a -> 0) and 1/V_n (a -> n), equal to 1 at a = n/2
    vol = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    lo, hi = min(vol, 1 / vol), max(vol, 1 / vol)
    alphas = np.linspace(0.05, n - 0.05, 200)
    vals = np.array([gamma_const(n, 0, a) * a / (n - a) for a in alphas])
    assert np.all(vals >= lo * (1 - 1e-12)) and np.all(vals <= hi * (1 + 1e-12))
    assert gamma_const(n, 0, n / 2) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_middle_exponent_is_constant_in_degree(n):
    vals = [gamma_const(n, j, n / 2) for j in range(1, 200)]
    assert np.allclose(vals, 1.0, atol=1e-14)


def test_large_degree_does_not_overflow():
    val = gamma_const(4, 4096, 0.0)
    assert math.isfinite(val) and val > 0
    assert math.log(val) == pytest.approx(log_gamma_const(4, 4096, 0.0), rel=1e-13)


def test_key_and_scalar_forms_agree():
    assert gamma_const(GammaKey(6, 3, 1.5)) == gamma_const(6, 3, 1.5)


@pytest.mark.parametrize("args", [(4, 0, 0.0), (4, 0, 4.0), (1, 2, 0.5), (4, -1, 1.0), (4, 2, 4.5)])
def test_rejects_poles_and_bad_keys(args):
    with pytest.raises(DomainError):
        gamma_const(*args)


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(4) == pytest.approx(2 * math.pi ** 2)
    assert sphere_area(3) == pytest.approx(4 * math.pi)

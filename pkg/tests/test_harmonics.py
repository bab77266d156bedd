import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from lpmult.errors import AliasingError, DomainError, UnsupportedDimensionError
from lpmult.harmonics import (HarmonicSeries, HarmonicTerm, fourier_series_circle, gegenbauer_normalized,
                              harmonic_dimension, harmonicity_residual, jacobi_p, mtilde4d_polynomial,
                              mtilde4d_series, mtilde4d_term, zonal_project, zonal_projections)
from lpmult.specfun import bessel_j
from lpmult.spherequad import SphericalFn, inner_product, make_rule
from lpmult.symbols import as_spherical_fn, make_symbol

SIGMA3 = 2 * math.pi ** 2


@pytest.fixture(scope="module")
def rule4():
    return make_rule(4, 48)


@pytest.fixture(scope="module")
def mtilde2_projections(rule4):
    f = as_spherical_fn(make_symbol("tensorPower", 4, 2))
    return zonal_projections(f, rule4, 24)


# -- circle

def test_circle_coefficients_of_cos_symbol():
    lam = 5.0
    f = as_spherical_fn(make_symbol("cosPhase", 2, lam))
    series = fourier_series_circle(f, 30, make_rule(2, 128))
    for j in range(-30, 31):
        assert abs(series.coefficients[j] - 1j ** abs(j) * bessel_j(abs(j), lam)) <= 1e-9


def test_constant_has_only_mean_coefficient():
    one = SphericalFn(lambda x: np.ones(len(x)))
    c = fourier_series_circle(one, 8, make_rule(2, 64)).coefficients
    assert c[0] == pytest.approx(1.0, abs=1e-15)
    assert max(abs(v) for j, v in c.items() if j != 0) <= 1e-15


def test_circle_parseval():
    f = as_spherical_fn(make_symbol("cosPhase", 2, 5.0))
    series = fourier_series_circle(f, 30, make_rule(2, 128))
    assert sum(abs(v) ** 2 for v in series.coefficients.values()) == pytest.approx(1.0, abs=1e-9)
    assert series.parseval_mass() == pytest.approx(series.target_norm_sq, abs=1e-9)


def test_circle_coefficients_match_pairings():
    f = as_spherical_fn(make_symbol("cosPhase", 2, 5.0))
    rule = make_rule(2, 128)
    c = fourier_series_circle(f, 20, rule).coefficients
    for j in range(-20, 21):
        e = SphericalFn(lambda x, j=j: np.exp(1j * j * np.arctan2(x[:, 1], x[:, 0])))
        assert abs(c[j] - inner_product(f, e, rule) / (2 * math.pi)) <= 1e-10


def test_circle_aliasing_is_rejected():
    with pytest.raises(AliasingError):
        fourier_series_circle(SphericalFn(lambda x: x[:, 0]), 20, make_rule(2, 64))


# -- explicit 4D terms

def test_missing_degrees_are_zero_terms():
    assert mtilde4d_term(2, 6).is_zero
    assert mtilde4d_term(2, 2).is_zero
    assert mtilde4d_term(4, 4).is_zero
    assert not mtilde4d_term(2, 4).is_zero


@pytest.mark.parametrize("k,j,ratio", [(2, 4, 5 / 3), (2, 8, 1 / 5), (2, 12, 13 / 210), (4, 8, 7 / 5)])
def test_term_norms_frozen(k, j, ratio):
    # ratios to pi^2 read off the zonal projector, which does not use the explicit formula
    assert mtilde4d_term(k, j).l2norm_sq == pytest.approx(ratio * math.pi ** 2, rel=1e-12)


def test_term_norms_match_zonal_projections(rule4, mtilde2_projections):
    for j in range(0, 25):
        proj = rule4.integrate(np.abs(mtilde2_projections[j]) ** 2)
        explicit = mtilde4d_term(2, j).l2norm_sq
        if explicit == 0.0:
            assert proj <= 1e-12
        else:
            assert proj == pytest.approx(explicit, rel=1e-6)


def test_terms_match_projections_pointwise(rule4, mtilde2_projections):
    for j in (4, 8, 12, 24):
        vals = mtilde4d_term(2, j).evaluator(rule4.nodes)
        assert np.max(np.abs(vals - mtilde2_projections[j])) <= 1e-9


def test_degree_two_projection_vanishes(rule4):
    f = as_spherical_fn(make_symbol("tensorPower", 4, 2))
    assert zonal_project(f, 4, 2, rule4).l2norm_sq <= 1e-20


def test_parseval_mass_of_the_expansion():
    # tail after degree 4m is 1/((m+1)(2m+1)) of the total
    for m in (1, 3, 6, 7, 25):
        frac = mtilde4d_series(2, 4 * m).parseval_mass() / SIGMA3
        assert frac == pytest.approx(1 - 1 / ((m + 1) * (2 * m + 1)), abs=1e-12)


def test_cross_degree_orthogonality(rule4, mtilde2_projections):
    w = rule4.weights
    norms = np.sqrt([np.sum(w * np.abs(p) ** 2) for p in mtilde2_projections])
    for a in range(25):
        for b in range(a + 1, 25):
            if norms[a] > 1e-10 and norms[b] > 1e-10:
                ip = abs(np.sum(w * mtilde2_projections[a] * np.conj(mtilde2_projections[b])))
                assert ip <= 1e-8 * norms[a] * norms[b]


@pytest.mark.parametrize("k", [2, 4, 6])
def test_terms_are_harmonic(k):
    pts = np.random.default_rng(7).uniform(0.4, 1.4, size=(20, 4))
    for j in range(2 * k, 2 * k + 17, 4):
        if j % 4 == 0:
            assert harmonicity_residual(k, j, pts).max() <= 1e-4


def test_harmonicity_residual_flags_a_non_harmonic_polynomial():
    # the literal sum without the alternating signs is not harmonic; emulate via |x|^2 times a term
    pts = np.random.default_rng(3).uniform(0.4, 1.4, size=(5, 4))
    h = 2e-3
    f = lambda x: np.sum(x ** 2, axis=1) * mtilde4d_polynomial(2, 4, x)
    lap = 0
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        lap = lap + (f(pts + e) - 2 * f(pts) + f(pts - e)) / h ** 2
    assert np.min(np.abs(lap)) > 1e-2


def test_polynomial_matches_term_on_sphere(rule4):
    pts = rule4.nodes[::97]
    for j in (4, 8, 16):
        assert np.allclose(mtilde4d_polynomial(2, j, pts), mtilde4d_term(2, j).evaluator(pts), atol=1e-10)


def test_odd_or_small_k_rejected():
    for k in (1, 3, 0):
        with pytest.raises(UnsupportedDimensionError):
            mtilde4d_term(k, 8)


# -- zonal projector

def test_projection_selectivity(rule4):
    f = SphericalFn(lambda x: (x[:, 0] + 1j * x[:, 1]) ** 2 * (x[:, 2] + 1j * x[:, 3]))
    full = rule4.integrate(np.abs(f(rule4.nodes)) ** 2)
    for j in range(7):
        term = zonal_project(f, 4, j, rule4)
        if j == 3:
            assert term.l2norm_sq == pytest.approx(full, rel=1e-6)
            pts = rule4.nodes[::53]
            assert np.allclose(term.evaluator(pts), f(pts), atol=1e-6)
        else:
            assert math.sqrt(term.l2norm_sq) <= 1e-6 * math.sqrt(full)


def test_projection_on_circle_matches_fourier_terms():
    rule = make_rule(2, 64)
    f = as_spherical_fn(make_symbol("cosPhase", 2, 3.0))
    series = fourier_series_circle(f, 10, rule)
    for j in range(6):
        assert zonal_project(f, 2, j, rule).l2norm_sq == pytest.approx(series.terms[j].l2norm_sq, abs=1e-12)


# -- polynomials and bookkeeping

@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=40), st.floats(min_value=0.5, max_value=3.0),
       st.floats(min_value=-1.0, max_value=1.0))
def test_gegenbauer_matches_scipy(j, lam, x):
    ref = special.eval_gegenbauer(j, lam, x) / special.eval_gegenbauer(j, lam, 1.0)
    assert gegenbauer_normalized(j, lam, x)[j] == pytest.approx(ref, abs=1e-10)


def test_gegenbauer_zero_is_chebyshev():
    x = np.linspace(-1, 1, 11)
    assert np.allclose(gegenbauer_normalized(9, 0.0, x)[9], np.cos(9 * np.arccos(x)), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=30), st.integers(min_value=0, max_value=8),
       st.floats(min_value=-1.0, max_value=1.0))
def test_jacobi_matches_scipy(deg, a, x):
    ref = special.eval_jacobi(deg, a, a, x)
    assert jacobi_p(deg, a, a, x) == pytest.approx(ref, rel=1e-10, abs=1e-10)


def test_harmonic_dimension():
    assert [harmonic_dimension(2, j) for j in range(4)] == [1, 2, 2, 2]
    assert [harmonic_dimension(3, j) for j in range(4)] == [1, 3, 5, 7]
    assert [harmonic_dimension(4, j) for j in range(4)] == [1, 4, 9, 16]


def test_series_requires_increasing_degrees():
    t = HarmonicTerm(degree=2, evaluator=SphericalFn(lambda x: np.zeros(len(x))), l2norm_sq=0.0)
    with pytest.raises(DomainError):
        HarmonicSeries(dimension=4, terms=(t, t), truncation_degree=2)

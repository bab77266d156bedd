"""
Spherical-harmonic expansions.

* ``fourier_series_circle``: Fourier coefficients on S^1.
* ``mtilde4d_term``: the closed-form degree-j piece of
  prod_i (zeta_i/|zeta_i|)^k on S^3 (k even), nonzero only for j >= 2k, 4 | j.
* ``zonal_project``: the orthogonal projector onto degree-j harmonics through
  the normalized Gegenbauer kernel, used as an independent check of the
  closed form.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, DomainError, UnsupportedDimensionError
from .gammaconst import sphere_area
from .specfun import log_gamma
from .spherequad import SUPPORTED_DIMENSIONS, SphericalFn

__all__ = [
    "HarmonicTerm",
    "HarmonicSeries",
    "gegenbauer_normalized",
    "jacobi_p",
    "harmonic_dimension",
    "fourier_series_circle",
    "mtilde4d_prefactor",
    "mtilde4d_term",
    "mtilde4d_series",
    "mtilde4d_polynomial",
    "zonal_project",
    "zonal_projections",
    "harmonicity_residual",
]


@dataclass(frozen=True, eq=False)
class HarmonicTerm:
    degree: int
    evaluator: SphericalFn
    l2norm_sq: float
    # optional nodal values on the rule the term was computed with
    nodal: np.ndarray = field(default=None, repr=False)

    @property
    def is_zero(self):
        return self.l2norm_sq == 0.0

    def scaled(self, factor):
        ev = self.evaluator
        nodal = None if self.nodal is None else factor * self.nodal
        return HarmonicTerm(
            degree=self.degree,
            evaluator=SphericalFn(lambda pts: factor * ev(pts), label=f"{factor}*{ev.label}"),
            l2norm_sq=abs(factor) ** 2 * self.l2norm_sq,
            nodal=nodal)


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    dimension: int
    terms: tuple
    truncation_degree: int
    target_norm_sq: float = None

    def __post_init__(self):
        degrees = [t.degree for t in self.terms]
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise DomainError("harmonic series degrees must be strictly increasing")

    def __call__(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.zeros(points.shape[0], dtype=complex)
        for t in self.terms:
            if not t.is_zero:
                out += t.evaluator(points)
        return out

    def as_function(self, label="series"):
        return SphericalFn(self.__call__, label=label)

    @property
    def degrees(self):
        return [t.degree for t in self.terms]

    def parseval_mass(self):
        return float(sum(t.l2norm_sq for t in self.terms))

    def map_terms(self, coefficient):
        """New series whose degree-j term is ``coefficient(j)`` times the old one."""
        return HarmonicSeries(
            dimension=self.dimension,
            terms=tuple(t.scaled(coefficient(t.degree)) for t in self.terms),
            truncation_degree=self.truncation_degree)


def harmonic_dimension(n, j):
    """Dimension of the space of degree-j spherical harmonics on S^(n-1)."""
    if j < 0:
        return 0
    if n == 2:
        return 1 if j == 0 else 2
    return math.comb(j + n - 1, n - 1) - (math.comb(j + n - 3, n - 1) if j >= 2 else 0)


def gegenbauer_normalized(j_max, lam, x):
    """Rows C_j^lam(x) / C_j^lam(1) for j = 0..j_max (Chebyshev T_j when lam = 0).

    Three-term recurrence
    ``c_j = (2 (j + lam - 1) x c_{j-1} - (j - 1) c_{j-2}) / (j + 2 lam - 1)``.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((j_max + 1,) + x.shape)
    out[0] = 1.0
    if j_max >= 1:
        out[1] = x
    for j in range(2, j_max + 1):
        out[j] = (2.0 * (j + lam - 1.0) * x * out[j - 1] - (j - 1.0) * out[j - 2]) / (j + 2.0 * lam - 1.0)
    return out


def _gegenbauer_iter(j_max, lam, x):
    prev2 = np.ones_like(x)
    yield prev2
    if j_max < 1:
        return
    prev1 = x.copy()
    yield prev1
    for j in range(2, j_max + 1):
        cur = (2.0 * (j + lam - 1.0) * x * prev1 - (j - 1.0) * prev2) / (j + 2.0 * lam - 1.0)
        yield cur
        prev2, prev1 = prev1, cur


def jacobi_p(deg, a, b, x):
    """Jacobi polynomial P_deg^(a,b)(x) by the standard three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if deg == 0:
        return p0
    p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for m in range(2, deg + 1):
        c = 2.0 * m + a + b
        a1 = 2.0 * m * (m + a + b) * (c - 2.0)
        a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b)
        a3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * c
        p0, p1 = p1, (a2 * p1 - a3 * p0) / a1
    return p1


def _zero_term(n, j):
    return HarmonicTerm(degree=j, evaluator=SphericalFn(lambda pts: np.zeros(len(pts)), "0"),
                        l2norm_sq=0.0)


# -- circle ------------------------------------------------------------------

def fourier_series_circle(f, J, rule, values=None):
    """Fourier coefficients ``c_j = (1/2pi) <f, e^{ij phi}>`` for |j| <= J.

    Degree-j terms are ``c_j e^{ij phi} + c_{-j} e^{-ij phi}``. The returned
    series also carries the raw coefficients as ``series.coefficients``
    (a dict j -> c_j).
    """
    if rule.dimension != 2:
        raise UnsupportedDimensionError("fourier_series_circle needs a rule on S^1")
    if J < 1 or int(J) != J:
        raise DomainError("J must be a positive integer")
    if rule.resolution < 4 * J:
        raise AliasingError(f"rule resolution {rule.resolution} < 4J = {4 * J}")
    if values is None:
        values = f(rule.nodes)
    phi = rule.phi
    js = np.arange(-J, J + 1)
    basis = np.exp(-1j * np.outer(js, phi))
    coeffs = (basis @ (rule.weights * values)) / (2.0 * math.pi)
    c = {int(j): complex(cj) for j, cj in zip(js, coeffs)}
    terms = []
    for j in range(J + 1):
        if j == 0:
            cp, cm = c[0], 0.0
        else:
            cp, cm = c[j], c[-j]

        def ev(pts, j=j, cp=cp, cm=cm):
            ph = np.arctan2(pts[:, 1], pts[:, 0])
            return cp * np.exp(1j * j * ph) + cm * np.exp(-1j * j * ph)

        norm_sq = 2.0 * math.pi * (abs(cp) ** 2 + abs(cm) ** 2)
        terms.append(HarmonicTerm(degree=j, evaluator=SphericalFn(ev, f"deg{j}"), l2norm_sq=norm_sq))
    target = float(np.sum(rule.weights * np.abs(values) ** 2))
    series = HarmonicSeries(dimension=2, terms=tuple(terms), truncation_degree=int(J),
                            target_norm_sq=target)
    object.__setattr__(series, "coefficients", c)
    return series


# -- explicit 4D expansion ----------------------------------------------------

def _log_binom(a, b):
    return log_gamma(a + 1.0) - log_gamma(b + 1.0) - log_gamma(a - b + 1.0)


def _check_k(k):
    if int(k) != k or k < 2 or k % 2:
        raise UnsupportedDimensionError(f"the explicit 4D expansion is stated for even k >= 2, got {k!r}")
    return int(k)


def _term_present(k, j):
    return j >= 2 * k and j % 4 == 0


def mtilde4d_prefactor(k, j):
    """Binomial prefactor of the degree-j term, in log space then exponentiated."""
    k = _check_k(k)
    if not _term_present(k, j):
        return 0.0
    h = j // 2
    log_num = _log_binom(j, h) + _log_binom(h, j // 4 - k // 2) + math.log((j + 1) * k)
    log_den = _log_binom(h, j // 4) + _log_binom(j, h - k) + math.log(h * (h + 1.0))
    return math.exp(log_num - log_den)


def _mtilde4d_norm_sq(k, j, pref):
    # |Y|^2 = pref^2 |z1|^2k |z2|^2k P_N^(k,k)(|z1|^2 - |z2|^2)^2 ; with t = |z2|^2 the
    # surface element of S^3 is dphi1 dphi2 dt / 2 and the t-integral is a Jacobi norm.
    N = j // 2 - k
    log_h = ((2 * k + 1) * math.log(2.0) + 2 * log_gamma(N + k + 1.0)
             - math.log(2 * N + 2 * k + 1.0) - log_gamma(N + 1.0) - log_gamma(N + 2 * k + 1.0))
    return 2.0 * math.pi ** 2 * pref ** 2 * math.exp(log_h - (2 * k + 1) * math.log(2.0))


def mtilde4d_term(k, j):
    """Degree-j term of the harmonic expansion of prod (zeta_i/|zeta_i|)^k on S^3.

    On the sphere the alternating binomial sum equals the Jacobi polynomial
    P_{j/2-k}^{(k,k)}(|zeta_1|^2 - |zeta_2|^2), which is evaluated by
    recurrence; the literal sum is :func:`mtilde4d_polynomial`.
    """
    k = _check_k(k)
    if int(j) != j or j < 0:
        raise DomainError("degree must be a nonnegative integer")
    j = int(j)
    if not _term_present(k, j):
        return _zero_term(4, j)
    pref = mtilde4d_prefactor(k, j)
    N = j // 2 - k

    def ev(pts):
        z1 = pts[:, 0] + 1j * pts[:, 1]
        z2 = pts[:, 2] + 1j * pts[:, 3]
        a = np.abs(z1) ** 2
        b = np.abs(z2) ** 2
        return pref * (z1 * z2) ** k * jacobi_p(N, k, k, (a - b) / (a + b))

    return HarmonicTerm(degree=j, evaluator=SphericalFn(ev, f"mtilde4d(k={k}, j={j})"),
                        l2norm_sq=_mtilde4d_norm_sq(k, j, pref))


def mtilde4d_series(k, J):
    """All explicit terms of degree <= J (zero terms omitted)."""
    k = _check_k(k)
    terms = tuple(mtilde4d_term(k, j) for j in range(2 * k, J + 1) if _term_present(k, j))
    return HarmonicSeries(dimension=4, terms=terms, truncation_degree=int(J),
                          target_norm_sq=2.0 * math.pi ** 2)


def mtilde4d_polynomial(k, j, x):
    """Homogeneous degree-j polynomial on R^4 given by the literal alternating sum.

    Coincides with :func:`mtilde4d_term` on the unit sphere; used for the
    Laplacian check off the sphere. Suffers cancellation beyond j ~ 60.
    """
    k = _check_k(k)
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if not _term_present(k, j):
        return np.zeros(x.shape[0], dtype=complex)
    pref = mtilde4d_prefactor(k, j)
    h = j // 2
    z1 = x[:, 0] + 1j * x[:, 1]
    z2 = x[:, 2] + 1j * x[:, 3]
    a = x[:, 0] ** 2 + x[:, 1] ** 2
    b = x[:, 2] ** 2 + x[:, 3] ** 2
    total = np.zeros(x.shape[0])
    for l in range(h - k + 1):
        total = total + (-1) ** l * math.comb(h, h - k - l) * math.comb(h, l) * a ** (h - k - l) * b ** l
    return pref * (z1 * z2) ** k * total


def harmonicity_residual(k, j, points, h=2e-3):
    """Relative finite-difference Laplacian of the degree-j polynomial at ``points``.

    Fourth-order central differences along each axis. Returns
    ``|sum_i d_ii P| / sum_i |d_ii P|`` per point.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    lap = np.zeros(points.shape[0], dtype=complex)
    scale = np.zeros(points.shape[0])
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        f0 = mtilde4d_polynomial(k, j, points)
        fp1 = mtilde4d_polynomial(k, j, points + e)
        fm1 = mtilde4d_polynomial(k, j, points - e)
        fp2 = mtilde4d_polynomial(k, j, points + 2 * e)
        fm2 = mtilde4d_polynomial(k, j, points - 2 * e)
        d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h)
        lap += d2
        scale += np.abs(d2)
    return np.abs(lap) / scale


# -- zonal projector ------------------------------------------------------------

def zonal_projections(f, rule, j_max, values=None):
    """Nodal values of H_j f on ``rule`` for every j = 0..j_max.

    ``H_j f(x) = (dim_j / sigma) int C_j(x.y)/C_j(1) f(y) dsigma(y)``. On the
    product rule the kernel only depends on phi differences, so for each pair
    of simplex nodes the phi-sum is a circular convolution done by FFT.
    Returns an array of shape (j_max + 1, number of nodes).
    """
    n = rule.dimension
    if n not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(f"dimension {n} unsupported")
    r = rule.r
    lam = (n - 2) / 2.0
    sigma = sphere_area(n)
    if values is None:
        values = f(rule.nodes)
    shape = rule.grid_shape
    M = shape[0]
    axes = tuple(range(1, r + 1))
    F = np.asarray(values, dtype=complex).reshape(shape)
    FF = np.fft.fftn(F, axes=axes)
    nphi = rule.phi.size
    delta = 2.0 * math.pi * np.arange(nphi) / nphi
    cos_grids = np.meshgrid(*([np.cos(delta)] * r), indexing="ij")
    omega = np.sqrt(rule.simplex_s)
    cell = (2.0 * math.pi / nphi) ** r
    wb = (rule.simplex_weights * cell).reshape((M,) + (1,) * r)
    dims = np.array([harmonic_dimension(n, j) for j in range(j_max + 1)], dtype=float)
    out = np.empty((j_max + 1,) + shape, dtype=complex)
    for a in range(M):
        # G[b, dphi] = sum_i omega_a,i omega_b,i cos(dphi_i)
        G = np.zeros((M,) + (nphi,) * r)
        for i in range(r):
            G += (omega[a, i] * omega[:, i]).reshape((M,) + (1,) * r) * cos_grids[i][None]
        np.clip(G, -1.0, 1.0, out=G)
        for j, C in enumerate(_gegenbauer_iter(j_max, lam, G)):
            acc = np.sum(np.fft.fftn(C, axes=axes) * FF * wb, axis=0)
            out[j, a] = np.fft.ifftn(acc) * (dims[j] / sigma)
    return out.reshape(j_max + 1, -1)


def zonal_project(f, n, j, rule, values=None, nodal=None):
    """H_j f as a :class:`HarmonicTerm`.

    The evaluator sums the zonal kernel against the nodal values of ``f``;
    ``l2norm_sq`` is the quadrature of |H_j f|^2 on ``rule``.
    """
    if n != rule.dimension:
        raise DomainError("rule dimension does not match n")
    if n not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(f"dimension {n} unsupported")
    if values is None:
        values = f(rule.nodes)
    if nodal is None:
        nodal = zonal_projections(f, rule, j, values=values)[j]
    lam = (n - 2) / 2.0
    scale = harmonic_dimension(n, j) / sphere_area(n)
    wf = rule.weights * values
    nodes = rule.nodes

    def ev(pts):
        out = np.empty(pts.shape[0], dtype=complex)
        step = max(1, 4_000_000 // nodes.shape[0])
        for s in range(0, pts.shape[0], step):
            dots = np.clip(pts[s:s + step] @ nodes.T, -1.0, 1.0)
            *_, C = _gegenbauer_iter(j, lam, dots)
            out[s:s + step] = scale * (C @ wf)
        return out

    norm_sq = float(np.sum(rule.weights * np.abs(nodal) ** 2))
    return HarmonicTerm(degree=int(j), evaluator=SphericalFn(ev, f"H_{j}"), l2norm_sq=norm_sq,
                        nodal=nodal)

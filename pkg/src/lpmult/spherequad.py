"""
Product quadrature on even-dimensional spheres S^(2r-1).

A point of S^(2r-1) in R^(2r) is written with r angles phi_i and a radial
part omega on the positive orthant of S^(r-1),

    x = (omega_1 cos phi_1, omega_1 sin phi_1, ..., omega_r cos phi_r, omega_r sin phi_r),

whose surface element is dphi_1...dphi_r omega_1...omega_r dsigma(omega).
With s_i = omega_i^2 that element becomes 2^(1-r) dphi ds on the standard
simplex, so polynomial integrands are integrated exactly by a trapezoid rule
in each phi_i and collapsed Gauss-Legendre coordinates on the simplex.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UnsupportedDimensionError
from .gammaconst import sphere_area

__all__ = [
    "QuadratureRule",
    "SphericalFn",
    "SupEstimate",
    "SUPPORTED_DIMENSIONS",
    "make_rule",
    "lp_norm",
    "sup_norm",
    "inner_product",
    "polar_coordinates",
]

SUPPORTED_DIMENSIONS = (2, 4, 6, 8)


@dataclass(frozen=True, eq=False)
class SphericalFn:
    """A function on the unit sphere, evaluated on arrays of points of shape (N, n)."""

    evaluator: object
    label: str = ""

    def __call__(self, points):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.asarray(self.evaluator(points), dtype=complex)
        if values.shape != (points.shape[0],):
            values = np.broadcast_to(values, (points.shape[0],)).astype(complex)
        return values


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    dimension: int
    resolution: int
    phi: np.ndarray
    simplex_u: np.ndarray
    simplex_s: np.ndarray
    simplex_weights: np.ndarray
    u_nodes: np.ndarray
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def r(self):
        return self.dimension // 2

    @property
    def phi_step(self):
        return 2.0 * math.pi / self.phi.size

    @property
    def grid_shape(self):
        """Node layout: (simplex nodes,) + (phi nodes,) * r."""
        return (self.simplex_s.shape[0],) + (self.phi.size,) * self.r

    def integrate(self, values):
        return np.sum(self.weights * values)

    def point(self, phis, u):
        """Map angles and collapsed simplex coordinates to a unit vector."""
        s = _collapse(np.atleast_2d(np.asarray(u, dtype=float)), self.r)[0]
        return _embed(np.sqrt(s), np.asarray(phis, dtype=float))


def _collapse(u, r):
    # u: (M, r-1) in [0,1]^(r-1) -> s: (M, r) on the simplex
    m = u.shape[0]
    s = np.empty((m, r))
    rest = np.ones(m)
    for i in range(r - 1):
        s[:, i] = rest * u[:, i]
        rest = rest * (1.0 - u[:, i])
    s[:, r - 1] = rest
    return s


def _embed(omega, phis):
    omega, phis = np.broadcast_arrays(omega, phis)
    r = omega.shape[-1]
    x = np.empty(omega.shape[:-1] + (2 * r,))
    x[..., 0::2] = omega * np.cos(phis)
    x[..., 1::2] = omega * np.sin(phis)
    return x


def _gauss_legendre_unit(m):
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * (x + 1.0), 0.5 * w


def make_rule(n, resolution, phi_nodes=None, simplex_nodes=None):
    """Product rule on S^(n-1) for even n in {2, 4, 6, 8}.

    Parameters
    ----------
    n : int
        Ambient dimension.
    resolution : int
        Polynomial degree integrated exactly; at least 8.
    phi_nodes : int, optional
        Trapezoid nodes per angle. Defaults to the smallest even count above
        ``resolution``.
    simplex_nodes : int, optional
        Gauss-Legendre nodes per collapsed simplex coordinate. Defaults to
        ``resolution // 2 + 1``.
    """
    if n not in SUPPORTED_DIMENSIONS:
        raise UnsupportedDimensionError(
            f"dimension {n!r} unsupported; use one of {SUPPORTED_DIMENSIONS}")
    if int(resolution) != resolution or resolution < 8:
        raise DomainError("resolution must be an integer >= 8")
    r = n // 2
    if phi_nodes is None:
        phi_nodes = 2 * ((resolution + 2) // 2)
    if phi_nodes < 1:
        raise DomainError("phi_nodes must be positive")
    phi = -math.pi + 2.0 * math.pi * np.arange(phi_nodes) / phi_nodes

    if r == 1:
        u_nodes = np.zeros(0)
        simplex_u = np.zeros((1, 0))
        simplex_w = np.ones(1)
    else:
        if simplex_nodes is None:
            simplex_nodes = resolution // 2 + 1
        u_nodes, u_w = _gauss_legendre_unit(simplex_nodes)
        grids = np.meshgrid(*([u_nodes] * (r - 1)), indexing="ij")
        wgrids = np.meshgrid(*([u_w] * (r - 1)), indexing="ij")
        simplex_u = np.stack([g.ravel() for g in grids], axis=1)
        simplex_w = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
        for i in range(r - 2):
            simplex_w = simplex_w * (1.0 - simplex_u[:, i]) ** (r - 2 - i)
        simplex_w = simplex_w * 2.0 ** (1 - r)
    simplex_s = _collapse(simplex_u, r)

    phi_grid = np.stack(np.meshgrid(*([phi] * r), indexing="ij"), axis=-1).reshape(-1, r)
    omega = np.sqrt(simplex_s)
    nodes = _embed(omega[:, None, :], phi_grid[None, :, :]).reshape(-1, n)
    weights = np.repeat(simplex_w, phi_grid.shape[0]) * (2.0 * math.pi / phi_nodes) ** r

    rule = QuadratureRule(
        dimension=n, resolution=int(resolution), phi=phi, simplex_u=simplex_u,
        simplex_s=simplex_s, simplex_weights=simplex_w, u_nodes=u_nodes,
        nodes=nodes, weights=weights)
    for arr in (phi, simplex_u, simplex_s, simplex_w, u_nodes, nodes, weights):
        arr.setflags(write=False)
    total = weights.sum()
    if abs(total - sphere_area(n)) > 1e-9 * sphere_area(n):
        raise AssertionError(f"weight total {total} differs from the sphere area")
    return rule


def polar_coordinates(points):
    """Split points of S^(2r-1) into (omega, phi) arrays of shape (N, r)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    re = points[:, 0::2]
    im = points[:, 1::2]
    return np.hypot(re, im), np.arctan2(im, re)


def _check_p(p):
    if p != math.inf and not p >= 1.0:
        raise DomainError(f"p must be >= 1 or infinity, got {p!r}")


@dataclass(frozen=True)
class SupEstimate:
    """Grid maximum of |f| and its locally refined value (both lower estimates of the sup)."""

    value: float
    grid_value: float
    residual: float
    point: tuple


def _golden_max(fun, lo, hi, iters=40):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return (c, fc) if fc > fd else (d, fd)


def sup_norm(f, rule, values=None, sweeps=2):
    """Grid maximum of |f| plus a golden-section refinement around the best node.

    Each coordinate (every angle, then every collapsed simplex coordinate) is
    searched within one grid spacing of the current best point.
    """
    if values is None:
        values = f(rule.nodes)
    mags = np.abs(values)
    idx = int(np.argmax(mags))
    grid_value = float(mags[idx])
    r = rule.r
    shape = rule.grid_shape
    multi = np.unravel_index(idx, shape)
    phis = np.array([rule.phi[i] for i in multi[1:]])
    u = rule.simplex_u[multi[0]].copy()

    def mag_at(ph, uu):
        return float(np.abs(f(rule.point(ph, uu)[None, :]))[0])

    best = grid_value
    h_phi = rule.phi_step
    if rule.u_nodes.size > 1:
        h_u = float(np.max(np.diff(rule.u_nodes)))
    else:
        h_u = 0.5
    for _ in range(sweeps):
        for i in range(r):
            def along(t, i=i):
                ph = phis.copy()
                ph[i] = t
                return mag_at(ph, u)
            t, val = _golden_max(along, phis[i] - h_phi, phis[i] + h_phi)
            if val > best:
                best, phis[i] = val, t
        for i in range(r - 1):
            def along_u(t, i=i):
                uu = u.copy()
                uu[i] = t
                return mag_at(phis, uu)
            lo, hi = max(0.0, u[i] - h_u), min(1.0, u[i] + h_u)
            t, val = _golden_max(along_u, lo, hi)
            if val > best:
                best, u[i] = val, t
    return SupEstimate(value=best, grid_value=grid_value, residual=best - grid_value,
                       point=(tuple(phis), tuple(u)))


def lp_norm(f, p, rule, values=None):
    """L^p(S^(n-1)) norm of ``f`` by the quadrature rule.

    For ``p = inf`` this is the refined grid maximum of :func:`sup_norm`.
    ``values`` may carry precomputed nodal values of ``f``.
    """
    _check_p(p)
    if values is None:
        values = f(rule.nodes)
    if p == math.inf:
        return sup_norm(f, rule, values=values).value
    mags = np.abs(values)
    return float(np.sum(rule.weights * mags ** p) ** (1.0 / p))


def inner_product(f, g, rule, f_values=None, g_values=None):
    """``sum_i w_i f(x_i) conj(g(x_i))``."""
    if f_values is None:
        f_values = f(rule.nodes)
    if g_values is None:
        g_values = g(rule.nodes)
    return complex(np.sum(rule.weights * f_values * np.conj(g_values)))

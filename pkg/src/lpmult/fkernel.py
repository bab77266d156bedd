"""
The radial kernel

    F_k(s) = int_0^inf J_k(2 sqrt(k) rho s) exp(-rho^2 / 2k) rho d rho,

its Beta-weighted closed form

    F_k(s) = 2^(k/2) k^(k+1) s^k / Gamma(k/2) int_0^1 exp(-2 k^2 s^2 tau) tau^(k/2) (1-tau)^(k/2-1) d tau,

the L^1 identity int F_k = sqrt(pi/2)/2, and the modulus of the
function u^(k) on S^(2r-1),

    |u^(k)| = 2 pi^r / (r-1)! k^-r int_0^inf prod_i F_k(t omega_i) dt / t.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv, roots_genlaguerre, roots_jacobi

from .errors import ConvergenceError, DomainError
from .specfun import log_gamma

__all__ = [
    "FkParams",
    "FkL1Result",
    "UkSupResult",
    "L1_TARGET",
    "R_GRID",
    "fk_eval",
    "fk_closed_form",
    "fk_integral",
    "fk_uniform_bound",
    "fk_small_s_bound",
    "fk_l1",
    "u_evendim",
    "u_evendim_sup",
]

L1_TARGET = 0.5 * math.sqrt(math.pi / 2.0)
R_GRID = (1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0, 20.0, 25.0, 32.0, 40.0, 50.0, 64.0)

# closed form: Gauss-Jacobi in tau below this value of z = 2 k^2 s^2, Laguerre above
_Z_SWITCH = 60.0
_NODES = 96


@dataclass(frozen=True)
class FkParams:
    k: int
    quad_tol: float = 1e-10
    t_cutoff_factor: float = 1.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if not 0.0 < self.quad_tol <= 1e-8:
            raise DomainError("quad_tol must lie in (0, 1e-8]")
        if not self.t_cutoff_factor > 0.0:
            raise DomainError("t_cutoff_factor must be positive")


def _check_k(k):
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    return int(k)


def _check_s(s):
    s = np.asarray(s, dtype=float)
    if np.any(~np.isfinite(s)) or np.any(s < 0):
        raise DomainError("s must be finite and nonnegative")
    return s


_rule_cache = {}


def _jacobi_rule(k):
    key = ("j", k)
    if key not in _rule_cache:
        # weight (1-x)^(k/2-1) (1+x)^(k/2) on [-1, 1]; tau = (1+x)/2
        x, w = roots_jacobi(_NODES, k / 2.0 - 1.0, k / 2.0)
        _rule_cache[key] = (0.5 * (1.0 + x), w * 2.0 ** (-k))
    return _rule_cache[key]


def _laguerre_rule(k):
    key = ("l", k)
    if key not in _rule_cache:
        _rule_cache[key] = roots_genlaguerre(_NODES, k / 2.0)
    return _rule_cache[key]


def fk_closed_form(k, s):
    """F_k(s) from the Beta-weighted form.

    For z = 2 k^2 s^2 <= 60 the tau-integral is a Gauss-Jacobi sum with the
    Beta weight built in; above, x = z tau turns it into
    z^(-k/2-1) int_0^z e^-x x^(k/2) (1 - x/z)^(k/2-1) dx, a generalized
    Gauss-Laguerre sum. Prefactors are combined in log space.
    """
    k = _check_k(k)
    s_arr = _check_s(s)
    scalar = s_arr.ndim == 0
    s_flat = np.atleast_1d(s_arr).ravel()
    out = np.zeros(s_flat.shape)
    pos = s_flat > 0
    if np.any(pos):
        sp = s_flat[pos]
        z = 2.0 * k * k * sp * sp
        log_pref = (k / 2.0) * math.log(2.0) + (k + 1) * math.log(k) + k * np.log(sp) - log_gamma(k / 2.0)
        val = np.empty(sp.shape)
        small = z <= _Z_SWITCH
        if np.any(small):
            tau, w = _jacobi_rule(k)
            integral = np.exp(-np.outer(z[small], tau)) @ w
            val[small] = np.exp(log_pref[small]) * integral
        big = ~small
        if np.any(big):
            x, w = _laguerre_rule(k)
            zb = z[big][:, None]
            ratio = x[None, :] / zb
            inside = ratio < 1.0
            g = np.where(inside, np.abs(1.0 - np.where(inside, ratio, 0.0)) ** (k / 2.0 - 1.0), 0.0)
            integral = g @ w
            val[big] = np.exp(log_pref[big] - (k / 2.0 + 1.0) * np.log(z[big])) * integral
        out[pos] = val
    out = out.reshape(np.atleast_1d(s_arr).shape)
    return float(out[0]) if scalar else out


_GL = np.polynomial.legendre.leggauss(24)


def fk_integral(k, s):
    """F_k(s) by quadrature of the Bessel integral.

    Gauss-Legendre panels between consecutive half-periods of
    J_k(2 sqrt(k) rho s), capped at width sqrt(k)/2, up to the point where the
    Gaussian factor is below 1e-19.
    """
    k = _check_k(k)
    s_arr = _check_s(s)
    scalar = s_arr.ndim == 0
    vals = []
    x, w = _GL
    rho_max = math.sqrt(2.0 * k * 44.0)
    for sv in np.atleast_1d(s_arr).ravel():
        if sv == 0.0:
            vals.append(0.0)
            continue
        a = 2.0 * math.sqrt(k) * sv
        step = min(math.pi / a, 0.5 * math.sqrt(k))
        edges = np.arange(0.0, rho_max + step, step)
        lo, hi = edges[:-1, None], edges[1:, None]
        rho = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[None, :]
        f = jv(k, a * rho) * np.exp(-rho * rho / (2.0 * k)) * rho
        vals.append(float(np.sum(0.5 * (hi - lo) * f * w[None, :])))
    out = np.array(vals).reshape(np.atleast_1d(s_arr).shape)
    return float(out[0]) if scalar else out


def fk_eval(k, s, representation="closedForm"):
    """F_k(s) by either representation (``"closedForm"`` or ``"integral"``)."""
    if representation == "closedForm":
        return fk_closed_form(k, s)
    if representation == "integral":
        return fk_integral(k, s)
    raise DomainError(f"unknown representation {representation!r}")


def fk_uniform_bound(s):
    """min{400 s^2, 1/(4 s^2)}, valid for k >= 3."""
    s = _check_s(s)
    with np.errstate(divide="ignore"):
        return np.minimum(400.0 * s * s, 0.25 / (s * s))


def fk_small_s_bound(k):
    """A_k with F_k(s) <= A_k s^k for every k >= 1 (drop the exponential)."""
    k = _check_k(k)
    log_beta = log_gamma(k / 2.0 + 1.0) + log_gamma(k / 2.0) - log_gamma(k + 1.0)
    return math.exp((k / 2.0) * math.log(2.0) + (k + 1) * math.log(k) - log_gamma(k / 2.0) + log_beta)


def _gl_panels(fun, edges, nodes=24):
    x, w = np.polynomial.legendre.leggauss(nodes)
    lo, hi = np.asarray(edges[:-1])[:, None], np.asarray(edges[1:])[:, None]
    pts = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[None, :]
    return float(np.sum(0.5 * (hi - lo) * fun(pts) * w[None, :]))


def _unit_edges(k):
    # geometric grading toward 0 where F_k changes on the scale 1/k
    base = [0.0] + list(np.geomspace(1e-3 / k, 1.0, 40))
    return np.array(base)


def _mass_below(k, a, nodes):
    # int_0^a F_k(s) ds, a <= 1
    edges = _unit_edges(k) * a
    return _gl_panels(lambda s: fk_closed_form(k, s), edges, nodes)


def _mass_above(k, b, nodes):
    # int_b^inf F_k(s) ds = int_0^(1/b) F_k(1/u) / u^2 du, b >= 1
    def g(u):
        out = np.zeros(u.shape)
        pos = u > 0
        out[pos] = fk_closed_form(k, 1.0 / u[pos]) / (u[pos] * u[pos])
        out[~pos] = 0.25  # F_k(s) s^2 -> 1/4
        return out

    edges = np.linspace(0.0, 1.0 / b, 9)
    return _gl_panels(g, edges, nodes)


@dataclass(frozen=True)
class FkL1Result:
    k: int
    value: float
    residual: float
    R: float
    core_mass: float
    tail_mass: float


def fk_l1(k, tail_budget=0.1, r_grid=R_GRID):
    """int_0^inf F_k together with the core mass on [1/R, R].

    The integral is split at s = 1 and the outer half mapped by s = 1/u.
    ``R`` is the smallest entry of ``r_grid`` whose two tails total less than
    ``tail_budget``. ``residual`` compares two Gauss-Legendre orders.
    """
    k = _check_k(k)
    value = _mass_below(k, 1.0, 24) + _mass_above(k, 1.0, 24)
    coarse = _mass_below(k, 1.0, 16) + _mass_above(k, 1.0, 16)
    residual = abs(value - coarse)
    for R in r_grid:
        tail = _mass_below(k, 1.0 / R, 24) + _mass_above(k, R, 24)
        if tail < tail_budget:
            return FkL1Result(k=k, value=value, residual=residual, R=float(R),
                              core_mass=value - tail, tail_mass=tail)
    raise ConvergenceError(f"no R in the grid brings the tails of F_{k} below {tail_budget}",
                           residual=tail)


# -- u^(k) ---------------------------------------------------------------------

def _check_radii(radii, r):
    radii = np.asarray(radii, dtype=float)
    if radii.shape != (r,):
        raise DomainError(f"expected {r} radii, got shape {radii.shape}")
    if np.any(radii < 0) or abs(np.sum(radii * radii) - 1.0) > 1e-9:
        raise DomainError("radii must be nonnegative with squares summing to 1")
    return radii


def _log_t_integral(k, radii, tol, cutoff_factor=1.0):
    # int_0^inf prod F_k(t w_i) dt/t in x = log t, split at t = 1 (x = 0)
    A = fk_small_s_bound(k)
    r = radii.size
    prod_w = float(np.prod(radii))
    # lower cut: prod A (t w_i)^k <= A^r prod_w^k t^(rk); tail = that / (rk)
    log_head = r * math.log(A) + k * math.log(prod_w)
    x_lo = (math.log(tol * r * k) - log_head) / (r * k) - math.log(cutoff_factor)
    x_lo = min(x_lo, -1.0)
    # upper cut: prod 1/(4 t^2 w_i^2); tail = that / (2r)
    log_tail = -r * math.log(4.0) - 2.0 * math.log(prod_w)
    x_hi = (log_tail - math.log(tol * 2 * r)) / (2 * r) + math.log(cutoff_factor)
    x_hi = max(x_hi, 1.0)
    tails = (math.exp(log_head + r * k * x_lo) / (r * k)
             + math.exp(log_tail - 2 * r * x_hi) / (2 * r))

    def integrand(x):
        t = np.exp(x)
        out = np.ones(x.shape)
        for w in radii:
            out = out * fk_closed_form(k, t * w)
        return out

    # panels of width ~ 0.25 in log t, refined near the bump at t ~ 1/k
    lower = np.linspace(x_lo, 0.0, int(math.ceil(-x_lo / 0.25)) + 1)
    upper = np.linspace(0.0, x_hi, int(math.ceil(x_hi / 0.25)) + 1)
    total = _gl_panels(integrand, lower, 24) + _gl_panels(integrand, upper, 24)
    coarse = _gl_panels(integrand, lower, 16) + _gl_panels(integrand, upper, 16)
    return total, abs(total - coarse) + tails


def u_evendim(r, k, radii, params=None):
    """|u^(k)| at a point of S^(2r-1) whose pairs (x_{2i-1}, x_{2i}) have moduli ``radii``.

    Parameters
    ----------
    r : int
        Number of complex coordinates, 1 <= r <= 3.
    k : int
        Positive integer.
    radii : sequence of float
        The moduli |zeta_i|; nonnegative with squares summing to 1.
    """
    if int(r) != r or not 1 <= r <= 3:
        raise DomainError("r must be 1, 2 or 3")
    k = _check_k(k)
    radii = _check_radii(radii, int(r))
    params = FkParams(k) if params is None else params
    if np.any(radii == 0.0):
        return 0.0
    integral, _ = _log_t_integral(k, radii, params.quad_tol, params.t_cutoff_factor)
    const = 2.0 * math.pi ** r / math.factorial(int(r) - 1)
    return const * k ** (-float(r)) * integral


@dataclass(frozen=True)
class UkSupResult:
    r: int
    k: int
    value: float
    radii: tuple
    grid_size: int


def _radii_grid(r, m):
    if r == 1:
        return [np.array([1.0])]
    if r == 2:
        th = np.linspace(0.0, math.pi / 2.0, m)[1:-1]
        return [np.array([math.cos(t), math.sin(t)]) for t in th]
    pts = []
    th = np.linspace(0.0, math.pi / 2.0, m)[1:-1]
    for a in th:
        for b in th:
            pts.append(np.array([math.sin(a) * math.cos(b), math.sin(a) * math.sin(b), math.cos(a)]))
    return pts


def u_evendim_sup(r, k, grid=33, params=None):
    """Maximum of :func:`u_evendim` over a grid of radii in the open positive orthant.

    For r = 2 the grid is ``grid`` equally spaced angles theta with radii
    (cos theta, sin theta), endpoints excluded (u vanishes there).
    """
    best, arg = -1.0, None
    pts = _radii_grid(int(r), grid)
    for radii in pts:
        v = u_evendim(r, k, radii, params)
        if v > best:
            best, arg = v, tuple(float(x) for x in radii)
    return UkSupResult(r=int(r), k=int(k), value=best, radii=arg, grid_size=len(pts))

"""
Near-extremizers for the Riesz-potential pairing.

For a degree-j harmonic Y the function

    g(x) = Y(x/|x|) |x|^(-n/p) S_beta(pi eps^2 |x|^2, pi eps^-2 |x|^2),   beta = j/2 + n/(2p),

with S_beta the normalized incomplete-gamma segment, approximates the
truncated power Y |x|^(-n/p) 1{eps <= |x| <= 1/eps} in L^p, and its Fourier
transform is i^-j gamma_{n,j,n/q} times the same profile with p and q
exchanged. All norms separate into ||Y||_p on the sphere times a 1D integral
in d rho / rho, computed here in the variable log rho.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .gammaconst import gamma_const, sphere_area
from .specfun import gamma_tail_constant, log_gamma, reg_gamma_segment, reg_gamma_upper

__all__ = [
    "TestFnParams",
    "LowerCompNorms",
    "EPSILON_GRID",
    "g_radial",
    "fourier_radial",
    "harmonic_lp_norm",
    "lowercomp_norms",
]

EPSILON_GRID = (1e-1, 1e-2, 1e-3, 1e-4)
QUAD_TOL = 1e-9
TAIL_TOL = 1e-12


@dataclass(frozen=True)
class TestFnParams:
    __test__ = False  # keep pytest from collecting this class

    n: int
    p: float
    epsilon: float
    j: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError("n must be an integer >= 2")
        if not 1.0 < self.p <= 2.0:
            raise DomainError(f"p must lie in (1, 2], got {self.p!r}")
        if not 0.0 < self.epsilon <= 0.5:
            raise DomainError(f"epsilon must lie in (0, 1/2], got {self.epsilon!r}")
        if int(self.j) != self.j or self.j < 0:
            raise DomainError("j must be a nonnegative integer")

    @property
    def q(self):
        return self.p / (self.p - 1.0)

    def beta(self, exponent=None):
        e = self.p if exponent is None else exponent
        return self.j / 2.0 + self.n / (2.0 * e)

    def swapped(self):
        """Same parameters with p and q exchanged (only meaningful for the profile)."""
        return _Swapped(self)


@dataclass(frozen=True)
class _Swapped:
    base: TestFnParams

    @property
    def n(self):
        return self.base.n

    @property
    def j(self):
        return self.base.j

    @property
    def epsilon(self):
        return self.base.epsilon

    @property
    def p(self):
        return self.base.q

    @property
    def q(self):
        return self.base.p


def _profile(n, j, exponent, eps, rho):
    rho = float(rho)
    if not rho > 0.0:
        raise DomainError("rho must be positive")
    beta = j / 2.0 + n / (2.0 * exponent)
    seg = reg_gamma_segment(beta, math.pi * eps * eps * rho * rho, math.pi * rho * rho / (eps * eps))
    return rho ** (-n / exponent) * seg


def g_radial(params, rho):
    """Radial factor rho^(-n/p) S_beta(pi eps^2 rho^2, pi eps^-2 rho^2) of g."""
    return _profile(params.n, params.j, params.p, params.epsilon, rho)


def fourier_radial(params, rho):
    """Radial factor of the Fourier transform without the i^-j gamma_{n,j,n/q} prefactor.

    Identical to ``g_radial`` of the parameters with p and q exchanged.
    """
    return _profile(params.n, params.j, params.q, params.epsilon, rho)


def harmonic_lp_norm(n, j, p):
    """||Y||_{L^p(S^(n-1))} for the harmonic Y(x) = Re (x_1 + i x_2)^j.

    With s = x_1^2 + x_2^2 ~ Beta(1, (n-2)/2) and an independent uniform angle,
    ||Y||_p^p = sigma * E|cos(j phi)|^p * E s^(jp/2).
    """
    sigma = sphere_area(n)
    if j == 0:
        return sigma ** (1.0 / p)
    cos_mean = math.exp(log_gamma((p + 1.0) / 2.0) - 0.5 * math.log(math.pi) - log_gamma(p / 2.0 + 1.0))
    a = j * p / 2.0
    if n == 2:
        s_mean = 1.0
    else:
        b = (n - 2) / 2.0
        # B(1 + a, b) / B(1, b)
        s_mean = math.exp(log_gamma(1.0 + a) + log_gamma(1.0 + b) - log_gamma(1.0 + a + b))
    return (sigma * cos_mean * s_mean) ** (1.0 / p)


# -- radial integrals ---------------------------------------------------------

_GL10 = np.polynomial.legendre.leggauss(10)
_GL20 = np.polynomial.legendre.leggauss(20)


def _panel(fun, a, b, rule):
    x, w = rule
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * float(np.dot(w, fun(mid + half * x)))


def _adaptive(fun, a, b, tol, depth=0, max_depth=30):
    coarse = _panel(fun, a, b, _GL10)
    fine = _panel(fun, a, b, _GL20)
    err = abs(fine - coarse)
    if err <= tol or depth >= max_depth:
        return fine, err
    m = 0.5 * (a + b)
    left, el = _adaptive(fun, a, m, tol / 2.0, depth + 1, max_depth)
    right, er = _adaptive(fun, m, b, tol / 2.0, depth + 1, max_depth)
    return left + right, el + er


def _integrate_log(fun, breaks, tol):
    """Sum of adaptive integrals of ``fun`` over consecutive unit-ish panels between breaks."""
    total = 0.0
    err = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b <= a:
            continue
        pieces = max(1, int(math.ceil((b - a) / 0.5)))
        edges = np.linspace(a, b, pieces + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            v, e = _adaptive(fun, lo, hi, tol / (len(breaks) * pieces))
            total += v
            err += e
    return total, err


@dataclass(frozen=True)
class _Side:
    beta: float
    exponent: float
    eps: float
    log_lo: float
    log_hi: float
    tail_lo: float
    tail_hi_bound: float


def _side(beta, exponent, eps):
    # lower cut: gamma(beta, x) <= x^beta / beta, so the segment is at most
    # x^beta / Gamma(beta + 1) with x = pi eps^-2 rho^2, and the tail of
    # S^e d rho / rho below rho_lo is at most S(rho_lo)^e / (2 beta e)
    lg1 = log_gamma(beta + 1.0)
    # solve (x^beta / Gamma(beta+1))^e / (2 beta e) = TAIL_TOL for x
    log_x = (math.log(TAIL_TOL * 2.0 * beta * exponent) / exponent + lg1) / beta
    log_x = min(log_x, math.log(1e-3))
    log_lo = 0.5 * (log_x - math.log(math.pi)) + math.log(eps)
    tail_lo = math.exp(exponent * (beta * log_x - lg1)) / (2.0 * beta * exponent)
    # upper cut: S <= Q(beta, X) <= (C / Gamma(beta)) X^(beta-1) e^-X for X = pi eps^2 rho^2 >= 1
    c = max(1.0, gamma_tail_constant(beta))
    X = max(1.0, beta + 1.0)
    while True:
        bound = _upper_tail_bound(beta, exponent, X, c)
        if bound < TAIL_TOL:
            break
        X *= 1.25
    log_hi = 0.5 * (math.log(X) - math.log(math.pi)) - math.log(eps)
    return _Side(beta=beta, exponent=exponent, eps=eps, log_lo=log_lo, log_hi=log_hi,
                 tail_lo=tail_lo, tail_hi_bound=bound)


def _upper_tail_bound(beta, e, X, c):
    # (1/2) int_X^inf (C x^(beta-1) e^-x / Gamma(beta))^e dx / x
    a = (beta - 1.0) * e
    pref = 0.5 * (c * math.exp(-log_gamma(beta))) ** e
    if a > 0.0:
        # int_X^inf x^(a-1) e^(-e x) dx = e^-a Gamma(a) Q(a, e X)
        return pref * math.exp(log_gamma(a) - a * math.log(e)) * reg_gamma_upper(a, e * X)
    return pref * X ** (a - 1.0) * math.exp(-e * X) / e


def _segment_array(beta, eps, log_rho):
    rho2 = np.exp(2.0 * np.asarray(log_rho))
    out = np.empty(rho2.shape)
    for i, r2 in enumerate(rho2.flat):
        out.flat[i] = reg_gamma_segment(beta, math.pi * eps * eps * r2, math.pi * r2 / (eps * eps))
    return out


@dataclass(frozen=True)
class LowerCompNorms:
    """Radial-integral norms of g and its Fourier transform.

    ``err_p`` is the L^p distance of g from the truncated power, ``norm_p``
    the L^p norm of g, ``main_p = ||Y||_p (2 log(1/eps))^(1/p)`` the norm of
    the truncated power; the ``_q`` fields are the Fourier-side analogues,
    all including gamma_{n,j,n/q}. ``regimes_p`` / ``regimes_q`` hold the
    four auxiliary integrals (normalized segments raised to the exponent).
    """

    params: TestFnParams
    err_p: float
    err_q: float
    norm_p: float
    norm_q: float
    main_p: float
    main_q: float
    norm_y_p: float
    norm_y_q: float
    prefactor_q: float
    regimes_p: dict = field(repr=False)
    regimes_q: dict = field(repr=False)
    residual: float = 0.0
    converged: bool = True


def _radial_side(n, j, exponent, eps, tol):
    beta = j / 2.0 + n / (2.0 * exponent)
    side = _side(beta, exponent, eps)
    le = math.log(eps)
    cache = {}

    def seg(x):
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        if key not in cache:
            cache[key] = _segment_array(beta, eps, x)
        return cache[key]

    def inside(x):
        return (x >= le) & (x <= -le)

    breaks = [side.log_lo, le, -le, side.log_hi]

    def err_integrand(x):
        return np.abs(seg(x) - inside(x)) ** exponent

    def norm_integrand(x):
        return seg(x) ** exponent

    err_int, e1 = _integrate_log(err_integrand, breaks, tol)
    norm_int, e2 = _integrate_log(norm_integrand, breaks, tol)
    # tails: below log_lo the segment is tiny and the indicator vanishes; above log_hi likewise
    tail = side.tail_lo + side.tail_hi_bound
    err_int += 0.5 * tail
    norm_int += 0.5 * tail

    def lower_part(x):
        r2 = np.exp(2.0 * x)
        return np.array([1.0 - reg_gamma_upper(beta, math.pi * eps * eps * v) for v in r2]) ** exponent

    def upper_part(x):
        r2 = np.exp(2.0 * x)
        return np.array([reg_gamma_upper(beta, math.pi * v / (eps * eps)) for v in r2]) ** exponent

    head, e3 = _integrate_log(norm_integrand, [side.log_lo, le], tol)
    tailint, e4 = _integrate_log(norm_integrand, [-le, side.log_hi], tol)
    defect_lo, e5 = _integrate_log(lower_part, [le, -le], tol)
    defect_hi, e6 = _integrate_log(upper_part, [le, -le], tol)
    regimes = {
        "below_window": head + side.tail_lo,
        "above_window": tailint + side.tail_hi_bound,
        "lower_defect": defect_lo,
        "upper_defect": defect_hi,
    }
    residual = e1 + e2 + e3 + e4 + e5 + e6 + tail
    return err_int, norm_int, regimes, residual


def lowercomp_norms(params, tol=QUAD_TOL):
    """Norms and approximation errors of g and its Fourier transform.

    Returns a :class:`LowerCompNorms`; ``residual`` sums the panel error
    estimates and the analytic tail bounds, ``converged`` is ``residual <= 10 tol``.
    """
    n, j, p, q, eps = params.n, params.j, params.p, params.q, params.epsilon
    err_p_int, norm_p_int, reg_p, res_p = _radial_side(n, j, p, eps, tol)
    err_q_int, norm_q_int, reg_q, res_q = _radial_side(n, j, q, eps, tol)
    yp = harmonic_lp_norm(n, j, p)
    yq = harmonic_lp_norm(n, j, q)
    pref = gamma_const(n, j, n / q)
    log_term = 2.0 * math.log(1.0 / eps)
    residual = res_p + res_q
    return LowerCompNorms(
        params=params,
        err_p=yp * err_p_int ** (1.0 / p),
        err_q=pref * yq * err_q_int ** (1.0 / q),
        norm_p=yp * norm_p_int ** (1.0 / p),
        norm_q=pref * yq * norm_q_int ** (1.0 / q),
        main_p=yp * log_term ** (1.0 / p),
        main_q=pref * yq * log_term ** (1.0 / q),
        norm_y_p=yp,
        norm_y_q=yq,
        prefactor_q=pref,
        regimes_p=reg_p,
        regimes_q=reg_q,
        residual=residual,
        converged=residual <= 10.0 * tol,
    )

"""
The lower-bound functional and the pipelines built on it.

For a symbol m on S^(n-1) and u = sum_j Y_j, v = sum_j i^-j gamma_{n,j,n/p} Y_j,

    strong = gamma_{n,0,n/q} / sigma^(1/p) * |<m, v>| / ||u||_q,
    weak   = (1/n) |<m, sum_j i^-j gamma_{n,j,n} Y_j>| / ||u||_inf.

Pipelines: the cos symbol on S^1 (Bessel coefficients), the tensor-power
symbol on S^3 (explicit harmonic terms), the L^2 norm of the kernel
coefficient side, the weighted Bessel sums and the Parseval identities
behind them, and log-log exponent fits.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import jv as scipy_jv

from .errors import DomainError, TruncationError, UnsupportedDimensionError
from .fkernel import u_evendim
from .gammaconst import gamma_const, sphere_area
from .harmonics import HarmonicSeries, HarmonicTerm, mtilde4d_term
from .specfun import bessel_j_orders
from .spherequad import SphericalFn, inner_product, lp_norm, make_rule, sup_norm
from .symbols import SMOOTHING_ID, SymbolSpec, as_spherical_fn, make_symbol, symbol_eval

__all__ = [
    "BoundReport",
    "SweepResult",
    "PARSEVAL_VARIANTS",
    "conjugate",
    "constant_series",
    "lower_bound_report",
    "cos_u_function",
    "cos_bound",
    "dim4_bound",
    "omega_l2",
    "bessel_weighted_sum",
    "parseval_residual",
    "fit_exponent",
]

PARSEVAL_VARIANTS = ("base", "real", "imagShift", "deriv1", "deriv2")
# a degree-0 term below this fraction of the series mass counts as absent in the endpoint quantity
ZERO_MEAN_TOL = 1e-20


@dataclass(frozen=True)
class BoundReport:
    n: int
    p: float
    q: float
    param_value: float
    inner_product: complex
    u_norm_q: float
    prefactor: float
    strong_bound: float
    weak_proxy: float
    truncation_degree: int
    u_inf_refinement_residual: float
    extras: dict = field(default_factory=dict)

    def components(self):
        """Flat dict of the scalar fields, used by the serializers."""
        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "paramValue": self.param_value,
            "innerProductRe": self.inner_product.real,
            "innerProductIm": self.inner_product.imag,
            "uNormQ": self.u_norm_q,
            "prefactor": self.prefactor,
            "strongBound": self.strong_bound,
            "weakProxy": self.weak_proxy,
            "truncationDegree": self.truncation_degree,
            "uInfRefinementResidual": self.u_inf_refinement_residual,
        }


@dataclass(frozen=True)
class SweepResult:
    samples: tuple
    slope: float
    intercept: float
    max_residual: float


def conjugate(p):
    """q = p / (p - 1) for p in (1, 2]."""
    p = float(p)
    if not 1.0 < p <= 2.0:
        raise DomainError(f"p must lie in (1, 2], got {p!r}")
    return p / (p - 1.0)


def constant_series(n, value=1.0):
    """The one-term harmonic series u = value (degree 0)."""
    sigma = sphere_area(n)
    term = HarmonicTerm(degree=0, evaluator=SphericalFn(lambda pts: np.full(len(pts), value, dtype=complex), "const"),
                        l2norm_sq=abs(value) ** 2 * sigma)
    return HarmonicSeries(dimension=n, terms=(term,), truncation_degree=0)


def _symbol_fn(m):
    if isinstance(m, SymbolSpec):
        return as_spherical_fn(m)
    if callable(m):
        return m
    raise DomainError("m must be a SymbolSpec or a spherical function")


def _prefactor(n, p, q):
    return gamma_const(n, 0, n / q) / sphere_area(n) ** (1.0 / p)


def _weak_terms(series):
    """Terms entering the endpoint quantity; None if a genuine mean is present (pole at j = 0)."""
    mass = series.parseval_mass()
    terms = []
    for t in series.terms:
        if t.degree == 0:
            if t.l2norm_sq > ZERO_MEAN_TOL * max(mass, 1e-300):
                return None
            continue
        terms.append(t)
    return terms


def lower_bound_report(n, p, m, u, rule, param_value=float("nan")):
    """Evaluate the lower-bound functional by quadrature on ``rule``.

    ``weak_proxy`` is None when u has a nonzero mean: gamma_{n,0,n} is a pole.
    ``extras`` records the Parseval tail of u when the series carries a target
    norm.
    """
    q = conjugate(p)
    if not isinstance(u, HarmonicSeries) or not u.terms:
        raise DomainError("u must be a nonempty HarmonicSeries")
    if rule.dimension != n or u.dimension != n:
        raise DomainError("dimension mismatch between n, u and the rule")
    m_fn = _symbol_fn(m)
    nodes = rule.nodes
    m_vals = m_fn(nodes)
    term_vals = [t.evaluator(nodes) for t in u.terms]
    u_vals = np.sum(term_vals, axis=0)
    v_vals = np.zeros(nodes.shape[0], dtype=complex)
    for t, tv in zip(u.terms, term_vals):
        v_vals += (1j) ** (-t.degree) * gamma_const(n, t.degree, n / p) * tv
    ip = inner_product(m_fn, None, rule, f_values=m_vals, g_values=v_vals)
    u_q = lp_norm(None, q, rule, values=u_vals)
    pref = _prefactor(n, p, q)
    strong = pref * abs(ip) / u_q

    u_fn = u.as_function("u")
    sup = sup_norm(u_fn, rule, values=u_vals)
    weak_terms = _weak_terms(u)
    weak = None
    if weak_terms is not None:
        w_vals = np.zeros(nodes.shape[0], dtype=complex)
        for t, tv in zip(u.terms, term_vals):
            if t.degree > 0:
                w_vals += (1j) ** (-t.degree) * gamma_const(n, t.degree, n) * tv
        weak = abs(inner_product(m_fn, None, rule, f_values=m_vals, g_values=w_vals)) / (n * sup.value)
    extras = {"uInf": sup.value, "smoothingChoice": SMOOTHING_ID}
    if u.target_norm_sq is not None:
        extras["tailMass"] = max(0.0, u.target_norm_sq - u.parseval_mass())
    return BoundReport(n=n, p=float(p), q=q, param_value=float(param_value), inner_product=ip,
                       u_norm_q=u_q, prefactor=pref, strong_bound=strong, weak_proxy=weak,
                       truncation_degree=u.truncation_degree,
                       u_inf_refinement_residual=sup.residual, extras=extras)


# -- cos symbol ----------------------------------------------------------------

def _check_lambda_trunc(lam, J):
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise DomainError("lambda must be finite and nonnegative")
    if int(J) != J or J < 2 * lam + 40:
        raise TruncationError(f"truncation J = {J} is below 2 lambda + 40 = {2 * lam + 40}")
    return lam, int(J)


def cos_u_function(lam):
    """u(phi) = cos(lam sin phi) - J_0(lam) on S^1."""
    j0 = float(bessel_j_orders(0, lam)[0])
    return SphericalFn(lambda pts: np.cos(lam * pts[:, 1]) - j0, label=f"cos(lam sin) - J0, lam={lam}")


def _circle_nodes(lam, J):
    # enough trapezoid nodes for |u|^q to converge; independent of p
    return max(256, 8 * int(J), 16 * int(math.ceil(lam)))


def cos_bound(lam, p, J):
    """Lower-bound functional for m = exp(i lam cos phi) with u = cos(lam sin phi) - J_0(lam).

    <m, v> = 4 pi sum_l gamma_{2,2l,2/p} J_{2l}(lam)^2 straight from Bessel
    values; ||u||_q and ||u||_inf by quadrature. The endpoint quantity
    reduces to 2 sum_l l J_{2l}^2 / ||u||_inf since gamma_{2,2l,2} = l / pi.
    """
    if lam < 1:
        raise DomainError("cos_bound needs lambda >= 1")
    lam, J = _check_lambda_trunc(lam, J)
    q = conjugate(p)
    jv = bessel_j_orders(J, lam)
    ls = np.arange(1, J // 2 + 1)
    even = jv[2 * ls] ** 2
    gam = np.array([gamma_const(2, 2 * l, 2.0 / p) for l in ls])
    ip = 4.0 * math.pi * float(np.sum(gam * even))
    weak_ip = 4.0 * math.pi * float(np.sum(ls / math.pi * even))
    rule = make_rule(2, 8, phi_nodes=_circle_nodes(lam, J))
    u_fn = cos_u_function(lam)
    u_vals = u_fn(rule.nodes)
    u_q = lp_norm(u_fn, q, rule, values=u_vals)
    sup = sup_norm(u_fn, rule, values=u_vals)
    pref = _prefactor(2, p, q)
    tail = abs(scipy_jv(J, lam)) + abs(scipy_jv(J - 1, lam))
    return BoundReport(n=2, p=float(p), q=q, param_value=lam, inner_product=complex(ip), u_norm_q=u_q,
                       prefactor=pref, strong_bound=pref * ip / u_q, weak_proxy=weak_ip / (2.0 * sup.value),
                       truncation_degree=J, u_inf_refinement_residual=sup.residual,
                       extras={"uInf": sup.value, "lastCoefficient": tail})


# -- tensor-power symbol on S^3 -------------------------------------------------------

def _check_even_k(k):
    if int(k) != k or k < 2 or k % 2:
        raise UnsupportedDimensionError(f"dim4_bound needs an even k >= 2, got {k!r}")
    return int(k)


def _closed_u_norm(k, q, nodes=48):
    # |u| depends on t = |zeta_2|^2 only; dsigma = dphi1 dphi2 dt / 2
    t, w = np.polynomial.legendre.leggauss(nodes)
    t, w = 0.5 * (t + 1.0), 0.5 * w
    vals = np.array([u_evendim(2, k, [math.sqrt(1.0 - tt), math.sqrt(tt)]) for tt in t])
    if q == math.inf:
        return float(vals.max())
    return float((2.0 * math.pi ** 2 * np.sum(w * vals ** q)) ** (1.0 / q))


def _panel_rule(edges, counts):
    xs, ws = [], []
    for a, b, m in zip(edges[:-1], edges[1:], counts):
        x, w = np.polynomial.legendre.leggauss(m)
        xs.append(0.5 * (a + b) + 0.5 * (b - a) * x)
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


def _smoothed_pairing(spec, terms, coeffs, J):
    """<m_phi, v> and ||m~ - m_phi||_2 on S^3 for v = sum_j coeffs_j Y~_j.

    Both m~ and v equal exp(ik(phi_1 + phi_2)) times a function of
    t = |zeta_2|^2, so only the smoothed symbol needs the full 3D grid. The
    product Gauss rule in (phi_1, phi_2, t) has breakpoints at every edge
    of the cutoff bands; dsigma = dphi_1 dphi_2 dt / 2.
    """
    k, d = int(spec.param), spec.delta
    pi = math.pi
    mid = 2 * k + 40
    phi, wphi = _panel_rule([-pi, -pi + d / 2, -pi + d, pi - d, pi - d / 2, pi], [16, 24, mid, 24, 16])
    t, wt = _panel_rule([0.0, d * d / 4, d * d, 1 - d * d, 1 - d * d / 4, 1.0],
                        [16, 24, max(40, J // 2 + 16), 24, 16])
    w1 = np.sqrt(1.0 - t)
    w2 = np.sqrt(t)
    axis_pts = np.stack([w1, np.zeros_like(t), w2, np.zeros_like(t)], axis=1)
    f_v = coeffs @ np.array([term.evaluator(axis_pts) for term in terms])
    c1, s1 = np.cos(phi), np.sin(phi)
    P1, P2 = np.meshgrid(phi, phi, indexing="ij")
    W12 = np.outer(wphi, wphi)
    base = np.exp(1j * k * (P1 + P2))
    ip, gap = 0.0 + 0.0j, 0.0
    for i in range(t.size):
        pts = np.empty(P1.shape + (4,))
        pts[..., 0] = w1[i] * c1[:, None]
        pts[..., 1] = w1[i] * s1[:, None]
        pts[..., 2] = w2[i] * c1[None, :]
        pts[..., 3] = w2[i] * s1[None, :]
        m_phi = symbol_eval(spec, pts.reshape(-1, 4)).reshape(P1.shape)
        ww = 0.5 * wt[i] * W12
        ip += np.sum(ww * m_phi * np.conj(base)) * np.conj(f_v[i])
        gap += float(np.sum(ww * np.abs(m_phi - base) ** 2))
    return complex(ip), math.sqrt(gap)


def dim4_bound(k, p, J, rule=None, delta=None, closed_check=True):
    """Lower-bound functional on S^3 for the tensor-power symbol with u = u^(k).

    u^(k) = sum_j gamma_{4,j,0} Y~_j (the factor i^j is 1 since 4 | j) and
    <m~, v> = sum_j gamma_{4,j,4/p} gamma_{4,j,0} ||Y~_j||^2 exactly per
    degree. ``||u||_q`` uses the truncated series on ``rule``; the untruncated
    value from the F_k representation goes to ``extras["uNormQClosed"]``.
    With ``delta`` the smoothed symbol is also paired with v by quadrature,
    next to the perturbation bound ||m~ - m_phi||_2 ||v||_2.
    """
    k = _check_even_k(k)
    q = conjugate(p)
    if int(J) != J or J < 2 * k + 16:
        raise TruncationError(f"truncation J = {J} is below 2k + 16 = {2 * k + 16}")
    J = int(J)
    if rule is None:
        rule = make_rule(4, max(64, 2 * J), phi_nodes=8)
    if rule.dimension != 4:
        raise DomainError("dim4_bound needs a rule on S^3")
    degrees = [j for j in range(2 * k, J + 1) if j % 4 == 0]
    terms = [mtilde4d_term(k, j) for j in degrees]
    g0 = np.array([gamma_const(4, j, 0.0) for j in degrees])
    gp = np.array([gamma_const(4, j, 4.0 / p) for j in degrees])
    norms = np.array([t.l2norm_sq for t in terms])
    ip = float(np.sum(gp * g0 * norms))
    u_l2_sq = float(np.sum(g0 ** 2 * norms))

    nodes = rule.nodes
    tv = np.array([t.evaluator(nodes) for t in terms])
    u_vals = g0 @ tv
    u_fn = SphericalFn(lambda pts: g0 @ np.array([t.evaluator(pts) for t in terms]), f"u^({k})")
    u_q = lp_norm(u_fn, q, rule, values=u_vals)
    sup = sup_norm(u_fn, rule, values=u_vals)
    pref = _prefactor(4, p, q)
    strong = pref * ip / u_q
    # gamma_{4,j,4} gamma_{4,j,0} = 1, so the endpoint pairing is the Parseval mass of the terms
    weak = float(np.sum(norms)) / (4.0 * sup.value)

    chain_rhs = (2.0 * k) ** (4.0 / p) * u_l2_sq
    extras = {
        "uInf": sup.value,
        "uL2Sq": u_l2_sq,
        "parsevalMass": float(np.sum(norms)),
        "tailMass": 2.0 * math.pi ** 2 - float(np.sum(norms)),
        "chainLhs": ip,
        "chainRhs": chain_rhs,
        "chainRatio": ip / chain_rhs,
        "smoothingChoice": SMOOTHING_ID,
    }
    if closed_check:
        extras["uNormQClosed"] = _closed_u_norm(k, q)
    if delta is not None:
        spec = make_symbol("smoothedEven", 4, k, delta)
        ip_phi, diff = _smoothed_pairing(spec, terms, gp * g0, J)
        v_l2 = math.sqrt(float(np.sum((gp * g0) ** 2 * norms)))
        extras.update({
            "delta": float(delta),
            "innerProductSmoothed": ip_phi,
            "strongBoundSmoothed": pref * abs(ip_phi) / u_q,
            "perturbationBound": diff * v_l2,
            "symbolL2Gap": diff,
        })
    return BoundReport(n=4, p=float(p), q=q, param_value=float(k), inner_product=complex(ip), u_norm_q=u_q,
                       prefactor=pref, strong_bound=strong, weak_proxy=weak, truncation_degree=J,
                       u_inf_refinement_residual=sup.residual, extras=extras)


# -- coefficient side ---------------------------------------------------------------

def omega_l2(spec, lam=None, J=None):
    """sqrt(4 pi sum_{j>=1} gamma_{2,j,2}^2 J_j(lam)^2) for the cos symbol.

    With gamma_{2,j,2} = j / (2 pi) this equals lam / (2 sqrt(pi)).
    """
    if not isinstance(spec, SymbolSpec) or spec.kind != "cosPhase":
        raise UnsupportedDimensionError("omega_l2 is available for the cosPhase symbol only")
    lam = spec.param if lam is None else float(lam)
    lam = abs(lam)
    if J is None:
        J = int(math.ceil(2 * lam + 40))
    lam, J = _check_lambda_trunc(lam, J)
    jv = bessel_j_orders(J, lam)
    js = np.arange(1, J + 1)
    gam = js / (2.0 * math.pi)
    return math.sqrt(4.0 * math.pi * float(np.sum(gam ** 2 * jv[1:] ** 2)))


def bessel_weighted_sum(a, lam, J):
    """sum_{l=1}^{J/2} l^a J_{2l}(lam)^2.

    Raises TruncationError when J < 2 lam + 40 or when the last retained
    coefficient is not below 1e-15 relative to the largest. The decay test
    uses scipy's J_nu directly since the FFT values bottom out near 1e-16.
    """
    lam, J = _check_lambda_trunc(lam, J)
    jv = bessel_j_orders(J, lam)
    ls = np.arange(1, J // 2 + 1)
    coeffs = jv[2 * ls]
    if coeffs.size and abs(scipy_jv(2 * ls[-1], lam)) > 1e-15 * max(np.max(np.abs(coeffs)), 1e-300):
        raise TruncationError("Bessel coefficients have not decayed at the truncation degree")
    return float(np.sum(ls.astype(float) ** a * coeffs ** 2))


def _lhs_function(lam, which):
    if which == "base":
        return lambda ph: np.abs(np.exp(1j * lam * np.cos(ph))) ** 2
    if which == "real":
        return lambda ph: np.cos(lam * np.cos(ph)) ** 2
    if which == "imagShift":
        return lambda ph: np.cos(lam * np.sin(ph)) ** 2
    if which == "deriv1":
        return lambda ph: (lam * np.sin(lam * np.cos(ph)) * np.sin(ph)) ** 2
    if which == "deriv2":
        return lambda ph: (-lam ** 2 * np.cos(lam * np.cos(ph)) * np.sin(ph) ** 2
                           + lam * np.sin(lam * np.cos(ph)) * np.cos(ph)) ** 2
    raise DomainError(f"unknown Parseval variant {which!r}; use one of {PARSEVAL_VARIANTS}")


def parseval_residual(lam, which, J):
    """|int |LHS|^2 dphi - coefficient-side sum| for one of the circle expansions.

    ``base``: exp(i lam cos phi) against 2 pi (J_0^2 + 2 sum J_j^2);
    ``real`` / ``imagShift``: cos(lam cos phi) / cos(lam sin phi) against
    2 pi J_0^2 + 4 pi sum J_{2l}^2; ``deriv1``: 16 pi sum l^2 J_{2l}^2;
    ``deriv2``: 64 pi sum l^4 J_{2l}^2. The left side uses a trapezoid rule
    whose size depends on lam only.
    """
    fun = _lhs_function(float(lam), which)
    lam, J = _check_lambda_trunc(lam, J)
    nodes = max(256, 16 * int(math.ceil(lam)) + 64)
    ph = 2.0 * math.pi * np.arange(nodes) / nodes
    lhs = 2.0 * math.pi * float(np.mean(fun(ph)))
    jv = bessel_j_orders(J, lam)
    ls = np.arange(1, J // 2 + 1).astype(float)
    even = jv[2 * ls.astype(int)] ** 2
    if which == "base":
        rhs = 2.0 * math.pi * (jv[0] ** 2 + 2.0 * float(np.sum(jv[1:] ** 2)))
    elif which in ("real", "imagShift"):
        rhs = 2.0 * math.pi * jv[0] ** 2 + 4.0 * math.pi * float(np.sum(even))
    elif which == "deriv1":
        rhs = 16.0 * math.pi * float(np.sum(ls ** 2 * even))
    else:
        rhs = 64.0 * math.pi * float(np.sum(ls ** 4 * even))
    return abs(lhs - rhs)


def fit_exponent(samples):
    """Least-squares line through (log x, log y).

    Returns a :class:`SweepResult` with the slope, intercept and the largest
    absolute residual in log y.
    """
    samples = tuple((float(x), float(y)) for x, y in samples)
    if len(samples) < 3:
        raise DomainError("an exponent fit needs at least 3 samples")
    arr = np.array(samples)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("exponent fits need positive samples")
    lx, ly = np.log(arr[:, 0]), np.log(arr[:, 1])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return SweepResult(samples=samples, slope=float(slope), intercept=float(intercept),
                       max_residual=float(np.max(np.abs(resid))))

"""
Homogeneous unimodular symbols, evaluated on unit vectors.

Kinds:

``cosPhase``      exp(i lam cos phi) on S^1
``tensorPower``   prod_i (zeta_i / |zeta_i|)^k on S^(2r-1)
``smoothed2D``    exp(i k phase(phi)), phase = phi away from the arc of width
                  delta around phi = pi, blended to 0 across it
``smoothedEven``  exp(i k Phi), Phi = (phi_1 + ... + phi_r) times smooth
                  cutoffs in every phi_i and omega_i

Both smoothed kinds use the blend ``smooth_transition``; every report built on
them records ``SMOOTHING_ID``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedDimensionError
from .spherequad import SphericalFn, polar_coordinates

__all__ = [
    "KINDS",
    "SMOOTHING_ID",
    "SymbolSpec",
    "MajorConeTest",
    "make_symbol",
    "smooth_transition",
    "symbol_eval",
    "symbol_phase",
    "as_spherical_fn",
    "major_cone",
]

KINDS = ("cosPhase", "tensorPower", "smoothed2D", "smoothedEven")
SMOOTHING_ID = "exp(-1/t) smoothstep; 2D: phi*(1-S) over |phi| in [pi-delta, pi]; " \
               "even: sum(phi)*prod c(phi_i)*prod d(omega_i) over [delta/2, delta]"
UNIT_TOL = 1e-9


def _psi(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_transition(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1, psi(t)/(psi(t)+psi(1-t)) between."""
    t_arr = np.asarray(t, dtype=float)
    a = _psi(t_arr)
    b = _psi(1.0 - t_arr)
    out = a / (a + b)
    if np.ndim(t) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class SymbolSpec:
    kind: str
    n: int
    param: float
    delta: float = None

    @property
    def r(self):
        return self.n // 2


@dataclass(frozen=True)
class MajorConeTest:
    delta: float

    def __call__(self, points):
        omega, phi = polar_coordinates(points)
        return np.all(omega > self.delta, axis=1) & np.all(np.abs(phi) < math.pi - self.delta, axis=1)


def major_cone(delta):
    return MajorConeTest(float(delta))


def make_symbol(kind, n, param, delta=None):
    """Validate and build a :class:`SymbolSpec`.

    ``param`` is lambda for ``cosPhase`` and k for the other kinds. ``delta``
    defaults to pi/8 for ``smoothed2D`` and 0.1/r for ``smoothedEven``.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown symbol kind {kind!r}")
    if not math.isfinite(param):
        raise DomainError("symbol parameter must be finite")
    if kind in ("cosPhase", "smoothed2D"):
        if n != 2:
            raise UnsupportedDimensionError(f"{kind} lives on S^1 (n = 2), got n = {n}")
    elif n % 2 or n < 2:
        raise UnsupportedDimensionError(f"{kind} needs an even dimension, got {n}")
    if kind == "smoothed2D":
        delta = math.pi / 8 if delta is None else float(delta)
        if not 0.0 < delta < math.pi:
            raise DomainError("smoothed2D needs 0 < delta < pi")
    elif kind == "smoothedEven":
        r = n // 2
        delta = 0.1 / r if delta is None else float(delta)
        if not 0.0 < delta < 2.0 / n:
            raise DomainError(f"smoothedEven needs 0 < delta < 2/n = {2.0 / n}")
    else:
        delta = None
    return SymbolSpec(kind=kind, n=int(n), param=float(param), delta=delta)


def _check_points(spec, points):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != spec.n:
        raise DomainError(f"expected points in R^{spec.n}, got shape {points.shape}")
    norms = np.linalg.norm(points, axis=1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOL):
        raise DomainError("symbols are evaluated on unit vectors only")
    return points


def _arc_cutoff(phi, delta):
    # 1 for |phi| <= pi - delta, 0 for |phi| >= pi - delta/2
    return 1.0 - smooth_transition((np.abs(phi) - (math.pi - delta)) / (delta / 2.0))


def _radial_cutoff(omega, delta):
    # 0 for omega <= delta/2, 1 for omega >= delta
    return smooth_transition((omega - delta / 2.0) / (delta / 2.0))


def symbol_phase(spec, points):
    """Real phase phi with symbol = exp(i * param * phi); not defined for tensorPower."""
    points = _check_points(spec, points)
    omega, phi = polar_coordinates(points)
    if spec.kind == "cosPhase":
        return points[:, 0]
    if spec.kind == "smoothed2D":
        ph = phi[:, 0]
        blend = smooth_transition((np.abs(ph) - (math.pi - spec.delta)) / spec.delta)
        return ph * (1.0 - blend)
    if spec.kind == "smoothedEven":
        d = spec.delta
        cut = np.prod(_arc_cutoff(phi, d), axis=1) * np.prod(_radial_cutoff(omega, d), axis=1)
        return phi.sum(axis=1) * cut
    raise DomainError("tensorPower has no global smooth phase")


def symbol_eval(spec, points):
    """Evaluate the symbol at unit vectors ``points`` (shape (N, n) or (n,))."""
    single = np.ndim(points) == 1
    pts = _check_points(spec, points)
    if spec.kind == "tensorPower":
        omega, phi = polar_coordinates(pts)
        # exp(i k phi_i) with phi_i the argument of zeta_i; zeta_i = 0 is measure zero, value 1 there
        vals = np.exp(1j * spec.param * phi.sum(axis=1))
    else:
        vals = np.exp(1j * spec.param * symbol_phase(spec, pts))
    return complex(vals[0]) if single else vals


def as_spherical_fn(spec):
    return SphericalFn(lambda pts: symbol_eval(spec, pts),
                       label=f"{spec.kind}(n={spec.n}, param={spec.param}, delta={spec.delta})")

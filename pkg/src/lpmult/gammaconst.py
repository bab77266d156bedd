"""Bochner constants gamma_{n,j,alpha} = pi^(n/2-alpha) Gamma((j+alpha)/2) / Gamma((j+n-alpha)/2)."""

import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import log_gamma

__all__ = [
    "GammaKey",
    "gamma_const",
    "log_gamma_const",
    "gamma_asymptotic_ratio",
    "gamma_asymptotic_limit",
    "sphere_area",
]


@dataclass(frozen=True)
class GammaKey:
    n: int
    j: int
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.n!r}")
        if int(self.j) != self.j or self.j < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.j!r}")
        if not 0.0 <= self.alpha <= self.n:
            raise DomainError(f"alpha must lie in [0, n], got {self.alpha!r}")
        if self.j == 0 and (self.alpha == 0.0 or self.alpha == self.n):
            raise DomainError("(j, alpha) = (0, 0) and (0, n) are poles of the gamma ratio")


def _key(key_or_n, j=None, alpha=None):
    if isinstance(key_or_n, GammaKey):
        return key_or_n
    return GammaKey(key_or_n, j, float(alpha))


def log_gamma_const(key_or_n, j=None, alpha=None):
    """Logarithm of gamma_{n,j,alpha}."""
    key = _key(key_or_n, j, alpha)
    n, j, a = key.n, key.j, key.alpha
    top = (j + a) / 2.0
    bottom = (j + n - a) / 2.0
    ratio = 0.0 if top == bottom else log_gamma(top) - log_gamma(bottom)
    return (n / 2.0 - a) * math.log(math.pi) + ratio


def gamma_const(key_or_n, j=None, alpha=None):
    """gamma_{n,j,alpha}, evaluated in log space.

    Accepts either a :class:`GammaKey` or the three fields positionally:
    ``gamma_const(4, 7, 1.3)``.
    """
    return math.exp(log_gamma_const(key_or_n, j, alpha))


def gamma_asymptotic_limit(n, alpha):
    """Limit of ``gamma_{n,j,alpha} j^(n/2-alpha)`` as j grows: (2 pi)^(n/2-alpha)."""
    return (2.0 * math.pi) ** (n / 2.0 - alpha)


def gamma_asymptotic_ratio(key_or_n, j=None, alpha=None):
    """``gamma_{n,j,alpha} * j^(n/2-alpha)``; tends to (2 pi)^(n/2-alpha)."""
    key = _key(key_or_n, j, alpha)
    if key.j == 0:
        raise DomainError("asymptotic ratio needs j >= 1")
    exponent = key.n / 2.0 - key.alpha
    return math.exp(log_gamma_const(key) + exponent * math.log(key.j))


def sphere_area(n):
    """Surface measure of S^(n-1): 2 pi^(n/2) / Gamma(n/2)."""
    if int(n) != n or n < 1:
        raise DomainError("dimension must be a positive integer")
    return 2.0 * math.exp((n / 2.0) * math.log(math.pi) - log_gamma(n / 2.0))

"""Numerical checks for L^p norms of unimodular homogeneous Fourier multipliers."""

__version__ = "0.1.0"

from .errors import (AliasingError, ConvergenceError, DomainError, TruncationError,
                     UnsupportedDimensionError)
from .gammaconst import GammaKey, gamma_const, sphere_area
from .spherequad import make_rule, lp_norm, sup_norm, inner_product
from .symbols import make_symbol, symbol_eval
from .harmonics import fourier_series_circle, mtilde4d_term, zonal_project
from .testfn import TestFnParams, lowercomp_norms
from .fkernel import fk_eval, fk_l1, u_evendim
from .bounds import (cos_bound, dim4_bound, lower_bound_report, omega_l2, bessel_weighted_sum,
                     parseval_residual, fit_exponent)

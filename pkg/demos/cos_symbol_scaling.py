"""
Lower bounds for the cos symbol on the circle
=============================================

The multiplier exp(i lam cos(theta)) on R^2 is unimodular, so its L^2 norm is
one, yet its L^p norm grows with lam. This script evaluates the explicit
lower-bound functional for a grid of lam and fits the growth exponents of the
strong quantity (expected 2(1/p - 1/2)) and the endpoint quantity (expected 1).
"""

import numpy as np

from lpmult.bounds import cos_bound, fit_exponent, omega_l2
from lpmult.symbols import make_symbol

lams = [8, 16, 32, 64, 128]

# %%
# Strong bound at p = 4/3. The test function u is cos(lam sin phi) minus its
# mean; everything is computed from Bessel coefficients except ||u||_q.
reports = [cos_bound(lam, 4 / 3, 2 * lam + 40) for lam in lams]
print(f"{'lambda':>7} {'strong':>10} {'endpoint':>10} {'||u||_q':>9}")
for r in reports:
    print(f"{r.param_value:7.0f} {r.strong_bound:10.4f} {r.weak_proxy:10.4f} {r.u_norm_q:9.4f}")

strong = fit_exponent([(r.param_value, r.strong_bound) for r in reports])
weak = fit_exponent([(r.param_value, r.weak_proxy) for r in reports])
print(f"strong slope {strong.slope:.3f} (target 0.5), endpoint slope {weak.slope:.3f} (target 1)")

# %%
# At p = 2 the functional can never exceed the true norm, which is 1.
print("p = 2:", np.round([cos_bound(lam, 2.0, 2 * lam + 40).strong_bound for lam in lams], 4))

# %%
# The matching upper bound rests on the L^2 norm of the kernel coefficients,
# which is exactly lam / (2 sqrt(pi)).
omega = [omega_l2(make_symbol("cosPhase", 2, lam)) for lam in lams]
print("omega:", np.round(omega, 6), "slope", round(fit_exponent(list(zip(lams, omega))).slope, 6))

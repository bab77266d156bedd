"""
The radial kernel F_k and the decay of u^(k)
============================================

F_k is a Gaussian-damped Bessel transform with a Beta-weighted closed form.
Its integral over (0, inf) equals sqrt(pi/2)/2 for every k, and the function
u^(k) built from products of F_k decays like k^-r on S^(2r-1).
"""

import numpy as np

from lpmult.bounds import fit_exponent
from lpmult.fkernel import L1_TARGET, fk_eval, fk_l1, u_evendim_sup

# %%
# Both representations of F_k, at a few points.
s = np.array([0.1, 0.5, 1.0, 2.0, 5.0])
for k in (1, 5, 20):
    print(f"k = {k:2d} closed form", np.round(fk_eval(k, s), 8))
    print(f"       integral   ", np.round(fk_eval(k, s, "integral"), 8))

# %%
# The L^1 identity and how much mass sits on the core interval [1/R, R].
for k in (1, 2, 5, 10, 20):
    res = fk_l1(k)
    print(f"k = {k:2d}: int F_k = {res.value:.12f} (target {L1_TARGET:.12f}), core [1/{res.R:g}, {res.R:g}] "
          f"holds {res.core_mass:.4f}")

# %%
# sup |u^(k)| on S^3 against k: the fitted slope should be close to -2.
ks = [2, 4, 8, 16, 32]
sups = [u_evendim_sup(2, k) for k in ks]
for r in sups:
    print(f"k = {r.k:2d}: sup |u| = {r.value:.6f} at radii {np.round(r.radii, 4)}")
print("slope:", round(fit_exponent([(r.k, r.value) for r in sups]).slope, 4))

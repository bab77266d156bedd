"""
Near-extremal test functions built from Y |x|^-n/p
==================================================

The test function g is a smoothly truncated homogeneous function Y(x)|x|^-n/p
with cutoff scale eps. Its distance to the sharply truncated power stays
bounded as eps -> 0 while its norm grows like log(1/eps)^(1/p).
"""

import math

from lpmult.testfn import EPSILON_GRID, TestFnParams, lowercomp_norms

print(f"{'eps':>8} {'errP':>10} {'errQ':>10} {'normP/main':>11} {'normQ/main':>11}")
for eps in EPSILON_GRID:
    r = lowercomp_norms(TestFnParams(2, 4 / 3, eps, 2))
    print(f"{eps:8.0e} {r.err_p:10.6f} {r.err_q:10.6f} {r.norm_p / r.main_p:11.6f} {r.norm_q / r.main_q:11.6f}")

# %%
# For p = 2 and Y = 1 the squared norm is linear in log(1/eps) with slope 4 pi.
vals = [lowercomp_norms(TestFnParams(2, 2.0, e, 0)).norm_p ** 2 for e in EPSILON_GRID]
slope = (vals[-1] - vals[-2]) / math.log(10)
print(f"slope of ||g||_2^2 against log(1/eps): {slope:.4f} (4 pi = {4 * math.pi:.4f})")

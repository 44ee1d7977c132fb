"""Plug-in BH under different null scalings on a two-sided dataset.

Reproduces the canonical picture: the same data run through the oracle
scaling, two mis-specified scalings, and the data-driven median/MAD scaling.
A wrong null either floods the output with false discoveries or wipes out
the true ones; the robust plug-in nearly matches the oracle.
"""

import numpy as np

from fdrlab import bh_procedure, estimate_scaling, fdp, gaussian_quantile, tdp

from make_fig2_data import make

path = make()
y = np.loadtxt(path)
n, n0 = y.size, 850
h0, h1 = range(n0), range(n0, n)
alpha = 0.2

sc = estimate_scaling(y)
print(f"n = {n}, true scaling theta = 1, sigma^2 = 4")
print(f"median/MAD estimate: theta~ = {sc.theta_hat:.3f}, sigma~^2 = {sc.sigma_hat**2:.3f}\n")

print(f"{'scaling':>28} {'rejections':>10} {'FDP':>7} {'TDP':>7}   thresholds")
for label, (u, s) in [
    ("oracle (1, 2)", (1.0, 2.0)),
    ("mis-specified (0, 1)", (0.0, 1.0)),
    ("mis-specified (1, 4)", (1.0, 4.0)),
    (f"estimated ({sc.theta_hat:.2f}, {sc.sigma_hat:.2f})", (sc.theta_hat, sc.sigma_hat)),
]:
    rej = bh_procedure(y, u, s, alpha)
    if rej.threshold > 0:
        z = gaussian_quantile(rej.threshold / 2.0)
        lines = f"y < {u - s * z:.2f} or y > {u + s * z:.2f}"
    else:
        lines = "(no rejection)"
    print(f"{label:>28} {rej.n_rejections:>10d} {fdp(rej, h0):>7.3f} "
          f"{tdp(rej, h1):>7.3f}   {lines}")

print("\nThe (0, 1) null treats ordinary noise as signal (high FDP); the")
print("(1, 4) null is too wide to reject anything; the estimated scaling")
print("tracks the oracle.")

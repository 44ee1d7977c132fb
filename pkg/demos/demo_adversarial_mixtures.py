"""Least-favorable mixtures: one dataset, two incompatible truths.

Solves the variance and location constructions, verifies the two exact
two-group decompositions of the same density, and shows the practical
consequence: on dense location-mixture data, the known-variance median
plug-in stabilizes at an FDP near 1/2.
"""

import numpy as np

from fdrlab import (adversarial_location_experiment, boundary_constants,
                    laplace_inflation, sample_mixture, solve_location_mixture,
                    solve_variance_mixture)

print("=== variance construction ===")
m = solve_variance_mixture(0.2, 0.2)
print(f"pi1 = pi2 = 0.2  ->  sigma2^2 = {m.sigma2**2:.4f}, crossing u0 = {m.u0:.4f},"
      f" residual = {m.residual:.1e}")
x = np.linspace(-8, 8, 5001)
h = m.mixture_density(x)
d1 = (1 - m.pi1) * m.null1_density(x) + m.pi1 * m.f1_density(x)
d2 = (1 - m.pi2) * m.null2_density(x) + m.pi2 * m.f2_density(x)
print(f"max |h - decomposition 1| = {np.abs(h - d1).max():.2e}")
print(f"max |h - decomposition 2| = {np.abs(h - d2).max():.2e}")

rng = np.random.default_rng(0)
null = sample_mixture(m, 50_000, "null", rng)
alt = sample_mixture(m, 50_000, "alternative", rng)
print(f"'null' component: mean {null.mean():+.3f}, var {null.var():.3f}"
      f" (target {m.sigma2**2:.3f})")
print(f"'alternative' component: min |draw| = {np.abs(alt).min():.3f} (> u0 = {m.u0:.3f})")

print("\n=== location construction ===")
loc = solve_location_mixture(0.25, 0.25)
print(f"pi1 = pi2 = 1/4  ->  mu = {loc.mu:.4f}, u0 = {loc.u0:.4f}, residual = {loc.residual:.1e}")

print("\n=== boundary constants ===")
for alpha in (0.05, 0.1, 0.25):
    pi_a, pi_star = boundary_constants(alpha)
    print(f"alpha = {alpha:<5} pi_alpha = {pi_a:.4f}  pi*_alpha = {pi_star:.4f}")
eta, zeta = laplace_inflation(0.25)
print(f"Laplace inflation at pi = 1/4: eta = {eta:.5f}, gap zeta = {zeta:.5f}")

print("\n=== dense-regime failure of the known-variance plug-in ===")
fdps = adversarial_location_experiment(n=5000, k_over_n=0.3, alpha=0.2,
                                       n_replications=40, seed=2)
print(f"n = 5000, k/n = 0.3, alpha = 0.2, 40 replications:")
print(f"mean FDP = {fdps.mean():.3f}; FDP >= 0.4 on {np.mean(fdps >= 0.4):.0%} of runs")
print("(the mixture is exactly the configuration where no estimator can win)")

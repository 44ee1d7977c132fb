"""Shared numerical checks used by both the module tests and the acceptance gate."""

from bisect import bisect_right
from fractions import Fraction

import numpy as np

from fdrlab import gaussian_pdf, gaussian_quantile, gaussian_tail


def stepup_threshold_exact(p, alpha):
    """Brute-force step-up threshold over the exact candidate grid.

    Maximizes t over {0} U {p_i} U {alpha k / n} subject to
    #{p_i <= t} >= n t / alpha, entirely in rational arithmetic (the float
    inputs are converted exactly).  Returns (threshold, k) with the
    threshold as a Fraction and k = n * threshold / alpha.
    """
    n = len(p)
    a = Fraction(float(alpha))
    pf = sorted(Fraction(float(v)) for v in p)
    best = Fraction(0)
    for k in range(1, n + 1):
        t = a * k / n
        if t > 1:
            break
        if bisect_right(pf, t) >= k and t > best:
            best = t
    for j in range(1, n + 1):
        t = pf[j - 1]
        if t > 1 or t <= best:
            continue
        if Fraction(bisect_right(pf, t)) >= n * t / a:
            best = t
    return best, best * n / a

SLACK = -1e-12


def tail_bound_slacks(n_points=10_000):
    """Slack of the analytic tail sandwich on a grid t in (0, 8].

    Returns (lower_slack, upper_slack) arrays; both must stay >= -1e-12
    for the bounds
        max(t phi(t)/(1+t^2), 1/2 - t/sqrt(2 pi)) <= tail(t)
        tail(t) <= phi(t) min(1/t, sqrt(pi/2)).
    """
    t = np.linspace(1e-6, 8.0, n_points)
    ph = gaussian_pdf(t)
    tl = gaussian_tail(t)
    lower = np.maximum(t * ph / (1.0 + t * t), 0.5 - t / np.sqrt(2.0 * np.pi))
    upper = ph * np.minimum(1.0 / t, np.sqrt(np.pi / 2.0))
    return tl - lower, upper - tl


def quantile_bound_slacks(n_points=10_000):
    """Slack of the quantile sandwich on x in (0, 1/2) and the small-x bound.

    Returns (lower_slack, upper_slack, small_x_slack) for
        sqrt(2 pi) (1/2 - x) <= quantile(x) <= sqrt(2 log(1/(2x)))
    on (0, 1/2), and quantile(x) >= sqrt(log(1/x)) for x <= 0.004.
    """
    x = np.linspace(1e-12, 0.5 - 1e-12, n_points)
    q = gaussian_quantile(x)
    lower = np.sqrt(2.0 * np.pi) * (0.5 - x)
    upper = np.sqrt(2.0 * np.log(1.0 / (2.0 * x)))
    xs = np.linspace(1e-12, 0.004, n_points)
    small = gaussian_quantile(xs) - np.sqrt(np.log(1.0 / xs))
    return q - lower, upper - q, small


def laplace_draws(rng, size):
    """Standard Laplace by inverse cdf."""
    u = rng.random(size) - 0.5
    return -np.sign(u) * np.log1p(-2.0 * np.abs(u))

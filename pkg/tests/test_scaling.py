"""Robust estimator contracts: order-statistic conventions and stability."""

import numpy as np
import pytest
from scipy.special import ndtri

from fdrlab import (estimate_scaling, gaussian_quantile, mad_estimate, median_estimate,
                    trimmed_mean_estimate)


def test_median_is_ceil_order_statistic():
    assert median_estimate([1, 2, 3, 4, 5]) == 3.0
    assert median_estimate([1, 2, 3, 4]) == 2.0  # not the midpoint average
    assert median_estimate([7.0] * 6) == 7.0
    assert median_estimate([4.0]) == 4.0


def test_mad_example():
    # U sorted = (0,1,1,2,2) so the central deviation is 1
    got = mad_estimate([1, 2, 3, 4, 5])
    assert got == pytest.approx(1.0 / gaussian_quantile(0.25), rel=1e-15)
    assert got == pytest.approx(1.4826, abs=5e-4)


def test_mad_degenerate_marker():
    assert mad_estimate([3.0, 3.0, 3.0]) == 0.0
    sc = estimate_scaling([3.0, 3.0, 3.0])
    assert sc.is_degenerate and sc.theta_hat == 3.0


def test_trimmed_mean():
    assert trimmed_mean_estimate([-2, -1, 0, 1, 2], 0.5) == 0.0
    assert trimmed_mean_estimate([5.0] * 4, 0.5) == 5.0
    y = [1.0, 2.0, 4.0, 10.0]
    assert trimmed_mean_estimate(y, 0.0) == pytest.approx(np.mean(y))
    with pytest.raises(ValueError):
        trimmed_mean_estimate(y, 1.0)


def test_equivariance():
    rng = np.random.default_rng(5)
    y = rng.normal(size=101)
    a, b = 2.7, -1.3
    assert median_estimate(a * y + b) == pytest.approx(a * median_estimate(y) + b, rel=1e-12)
    assert mad_estimate(a * y + b) == pytest.approx(a * mad_estimate(y), rel=1e-12)


def test_breakdown_sanity():
    rng = np.random.default_rng(17)
    n = 10_000
    y = rng.normal(size=n)
    theta0, sigma0 = median_estimate(y), mad_estimate(y)
    y_bad = y.copy()
    y_bad[: n // 10] = 1e6
    assert abs(median_estimate(y_bad) - theta0) < 0.2
    assert abs(mad_estimate(y_bad) - sigma0) < 0.5


def test_two_sided_contamination_estimates_distributionally():
    # 850 nulls N(1, 4) plus 75 shifts of +5 and 75 of -3: the reported
    # single-draw estimates (theta~, sigma~^2) = (1.12, 5.85) must be a
    # typical draw of the estimator distribution, not an outlier
    rng = np.random.default_rng(23)
    reps, n = 300, 1000
    thetas = np.empty(reps)
    sig2s = np.empty(reps)
    for r in range(reps):
        y = np.empty(n)
        y[:850] = 1.0 + 2.0 * ndtri(rng.random(850))
        y[850:925] = 6.0 + 2.0 * ndtri(rng.random(75))
        y[925:] = -2.0 + 2.0 * ndtri(rng.random(75))
        thetas[r] = median_estimate(y)
        sig2s[r] = mad_estimate(y) ** 2
    for observed, sample in ((1.12, thetas), (5.85, sig2s)):
        z = abs(observed - sample.mean()) / sample.std(ddof=1)
        assert z < 3.0


def test_no_contamination_bias():
    # vectorized over replications: per-row order statistics
    rng = np.random.default_rng(29)
    reps, n = 1000, 10_000
    theta, sigma = 0.7, 1.9
    u = rng.random((reps, n))
    y = theta + sigma * ndtri(np.clip(u, 1e-16, 1 - 1e-16))
    ys = np.sort(y, axis=1)
    med = ys[:, int(np.ceil(n / 2)) - 1]
    dev = np.sort(np.abs(y - med[:, None]), axis=1)
    mad = dev[:, int(np.ceil(n / 2)) - 1] / gaussian_quantile(0.25)
    assert abs(med.mean() - theta) < 0.02 * sigma
    assert abs(mad.mean() - sigma) < 0.02 * sigma

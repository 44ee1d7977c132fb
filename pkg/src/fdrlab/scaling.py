"""Robust location/scale estimators for the unknown null.

The location estimate is the ceil(n/2)-th ascending order statistic (the
paper-exact median convention, not the midpoint average), and the scale is
the median absolute deviation rescaled by the Gaussian upper quartile so it
is consistent for sigma under a Gaussian null.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dist import gaussian_quantile
from .testing import as_sample


@dataclass(frozen=True)
class Scaling:
    """An estimated null scaling; sigma_hat == 0 marks a degenerate scale."""

    theta_hat: float
    sigma_hat: float

    @property
    def is_degenerate(self):
        return self.sigma_hat == 0.0


def median_estimate(y):
    """Sample median as the ceil(n/2)-th ascending order statistic."""
    y = as_sample(y)
    return float(y.order_stat(math.ceil(y.n / 2)))


def mad_estimate(y):
    """MAD about the order-statistic median, rescaled by 1/quantile(1/4).

    Returns 0.0 (the degenerate-zero marker) when the central absolute
    deviation is exactly zero, e.g. on a constant sample.
    """
    y = as_sample(y)
    med = y.order_stat(math.ceil(y.n / 2))
    u = np.sort(np.abs(y.values - med))
    central = u[math.ceil(y.n / 2) - 1]
    if central == 0.0:
        return 0.0
    return float(central / gaussian_quantile(0.25))


def trimmed_mean_estimate(y, trim_fraction=0.5):
    """Mean of the central order statistics after symmetric trimming.

    Trims floor(n * trim_fraction / 2) observations from each side;
    trim_fraction = 0 is the arithmetic mean.
    """
    if not (0.0 <= trim_fraction < 1.0):
        raise ValueError("trim_fraction must lie in [0, 1)")
    y = as_sample(y)
    m = int(np.floor(y.n * trim_fraction / 2.0))
    kept = y.sorted_view[m : y.n - m]
    if kept.size == 0:
        raise ValueError("trimming removed every observation")
    return float(np.mean(kept))


def estimate_scaling(y, location="median"):
    """The (theta~, sigma~) plug-in pair; location may be 'median' or 'trimmed'."""
    y = as_sample(y)
    if location == "median":
        theta = median_estimate(y)
    elif location == "trimmed":
        theta = trimmed_mean_estimate(y, 0.5)
    else:
        raise ValueError("location must be 'median' or 'trimmed'")
    return Scaling(theta_hat=theta, sigma_hat=mad_estimate(y))

"""Tiny shared helpers for the demo scripts."""

import numpy as np


def laplace_sample(rng, size):
    """Standard Laplace draws by inverse cdf."""
    u = rng.random(size) - 0.5
    return -np.sign(u) * np.log1p(-2.0 * np.abs(u))

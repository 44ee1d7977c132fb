"""DKW-based confidence superset for the null cdf and its applications.

Given at most k contaminated coordinates, every plausible null cdf must make
``(F_n_hat - (1 - k/n) F0) / (k/n)`` close to a cdf.  Intersecting that
requirement with a DKW band yields per-index lower/upper envelopes whose
pointwise ordering characterizes region membership.  On top of membership
sit a goodness-of-fit test (single null and null family) and the rejection
heatmap over a grid of candidate Gaussian scalings.
"""

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dist import NullModel, gaussian_model
from .scaling import mad_estimate, median_estimate
from .testing import as_sample, bh_procedure


def worker_count(default=1):
    """Worker cap from the FDRLAB_THREADS environment variable."""
    raw = os.environ.get("FDRLAB_THREADS", "")
    try:
        return max(1, int(raw)) if raw else default
    except ValueError:
        return default


def dkw_constant(n, k, alpha):
    """The band half-width c = sqrt(-(1 - k/n) log(alpha/2) / (2n))."""
    if not (0 <= k <= n - 1):
        raise ValueError("contamination bound k must lie in [0, n-1]")
    if not (0.0 < alpha < 1.0):
        raise ValueError("level alpha must lie in (0, 1)")
    return math.sqrt(-(1.0 - k / n) * math.log(alpha / 2.0) / (2.0 * n))


def _band_terms(y, f0: NullModel, k, alpha):
    """Shared prefix-max / suffix-min statistics of the band, plus c."""
    y = as_sample(y)
    n = y.n
    c = dkw_constant(n, k, alpha)
    ys = y.sorted_view
    frac = np.arange(n + 1) / n
    w = 1.0 - k / n
    # l = 0 uses F0(Y_(0)) = F0(-inf) = 0; l = n uses F0(Y_(n+1)-) = 1
    lower_terms = frac - w * np.concatenate(([0.0], np.asarray(f0.cdf(ys), dtype=float)))
    upper_terms = frac - w * np.concatenate((np.asarray(f0.cdf_left(ys), dtype=float), [1.0]))
    prefix_max = np.maximum.accumulate(lower_terms)
    suffix_min = np.minimum.accumulate(upper_terms[::-1])[::-1]
    return prefix_max, suffix_min, c


def envelope_bounds(y, f0: NullModel, k, alpha):
    """Lower/upper envelopes (a_hat, b_hat), each of length n + 1.

    Requires k >= 1 (the formulas divide by k/n); use ``null_in_region``
    for the k = 0 limiting case.
    """
    if k < 1:
        raise ValueError("envelope_bounds requires k >= 1; k = 0 is a plain DKW band check")
    y = as_sample(y)
    prefix_max, suffix_min, c = _band_terms(y, f0, k, alpha)
    kn = k / y.n
    a = np.maximum(0.0, (prefix_max - c) / kn)
    b = np.minimum(1.0, (suffix_min + c) / kn)
    return a, b


def null_in_region(y, f0: NullModel, k, alpha):
    """True iff f0 belongs to the (1 - alpha)-confidence superset of nulls."""
    y = as_sample(y)
    prefix_max, suffix_min, c = _band_terms(y, f0, k, alpha)
    if k == 0:
        # limiting case: the empirical cdf must stay within c of F0 on both sides
        return bool(prefix_max[-1] <= c and suffix_min[0] >= -c)
    kn = k / y.n
    a = np.maximum(0.0, (prefix_max - c) / kn)
    b = np.minimum(1.0, (suffix_min + c) / kn)
    return bool(np.all(a <= b))


def gof_test_single(y, f0: NullModel, k, alpha):
    """Level-alpha goodness-of-fit test of one null; True means reject."""
    return not null_in_region(y, f0, k, alpha)


def gof_test_family(y, family, k, alpha):
    """Reject a whole null family iff no member enters the confidence region."""
    models = list(family)
    if not models:
        raise ValueError("gof_test_family needs a nonempty candidate grid")
    return not any(null_in_region(y, m, k, alpha) for m in models)


@dataclass(frozen=True)
class RegionSpec:
    """A grid of candidate Gaussian scalings to scan."""

    k: int
    alpha: float
    thetas: np.ndarray
    sigma2s: np.ndarray

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.thetas, dtype=float))
        s = np.atleast_1d(np.asarray(self.sigma2s, dtype=float))
        if t.size == 0 or s.size == 0:
            raise ValueError("candidate grid must be nonempty")
        if np.any(s <= 0):
            raise ValueError("candidate variances must be positive")
        object.__setattr__(self, "thetas", t)
        object.__setattr__(self, "sigma2s", s)


@dataclass(frozen=True)
class RegionGrid:
    """Scan result: membership flags and per-cell rejection counts.

    ``n_rejections`` is NaN on cells outside the region.
    """

    thetas: np.ndarray
    sigma2s: np.ndarray
    in_region: np.ndarray  # shape (len(thetas), len(sigma2s))
    n_rejections: np.ndarray
    k: int = 0
    alpha: float = 0.1

    def to_csv(self, path):
        """One row per cell: theta,sigma2,in_region,n_rejections.

        Floats use shortest round-trip decimals; out-of-region cells leave
        the rejection count empty.
        """
        with open(path, "w", newline="") as fh:
            wtr = csv.writer(fh)
            wtr.writerow(["theta", "sigma2", "in_region", "n_rejections"])
            for i, th in enumerate(self.thetas):
                for j, s2 in enumerate(self.sigma2s):
                    inr = bool(self.in_region[i, j])
                    cnt = "" if not inr else str(int(self.n_rejections[i, j]))
                    wtr.writerow([repr(float(th)), repr(float(s2)), int(inr), cnt])


def default_region_spec(y, k, alpha, resolution=60):
    """Default 60 x 60 grid bracketing the robust point estimate."""
    y = as_sample(y)
    theta = median_estimate(y)
    sigma = mad_estimate(y)
    if sigma == 0.0:
        raise ValueError("degenerate MAD; supply an explicit grid")
    half = 4.0 * sigma * math.sqrt(0.1)
    thetas = np.linspace(theta - half, theta + half, resolution)
    sigma2s = np.linspace(0.25 * sigma**2, 4.0 * sigma**2, resolution)
    return RegionSpec(k=k, alpha=alpha, thetas=thetas, sigma2s=sigma2s)


def model_region_scan(y, models, k, alpha):
    """Region scan over an arbitrary finite family of candidate nulls.

    Returns (in_region, n_rejections) arrays aligned with ``models``; the
    rejection count applies the plug-in step-up procedure with each model's
    own location (and scale, for Gaussian candidates) and is NaN outside
    the region.  The Gaussian product-grid case has the dedicated
    ``scaling_region_scan``.
    """
    models = list(models)
    if not models:
        raise ValueError("model_region_scan needs a nonempty candidate family")
    member = np.zeros(len(models), dtype=bool)
    counts = np.full(len(models), np.nan)
    for i, m in enumerate(models):
        member[i] = null_in_region(y, m, k, alpha)
        if member[i]:
            s = m.sigma if m.family == "gaussian" else 1.0
            shape = m if m.family != "tabulated" else None
            if shape is None:
                raise ValueError("tabulated candidates carry no p-value shape")
            rej = bh_procedure(y, m.theta, s, alpha, shape)
            counts[i] = float(rej.n_rejections)
    return member, counts


def scaling_region_scan(y, spec: RegionSpec):
    """Evaluate membership and the BH rejection count on every grid cell.

    Cells are independent; they may be evaluated concurrently (worker count
    capped by FDRLAB_THREADS) and the result is order-independent.
    """
    y = as_sample(y)
    nt, ns = spec.thetas.size, spec.sigma2s.size
    in_region = np.zeros((nt, ns), dtype=bool)
    counts = np.full((nt, ns), np.nan)

    def cell(idx):
        i, j = divmod(idx, ns)
        th, s2 = spec.thetas[i], spec.sigma2s[j]
        member = null_in_region(y, gaussian_model(th, math.sqrt(s2)), spec.k, spec.alpha)
        if not member:
            return i, j, False, np.nan
        rej = bh_procedure(y, th, math.sqrt(s2), spec.alpha)
        return i, j, True, float(rej.n_rejections)

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(cell, range(nt * ns)))
    else:
        results = [cell(idx) for idx in range(nt * ns)]
    for i, j, member, cnt in results:
        in_region[i, j] = member
        counts[i, j] = cnt
    return RegionGrid(thetas=spec.thetas, sigma2s=spec.sigma2s,
                      in_region=in_region, n_rejections=counts,
                      k=spec.k, alpha=spec.alpha)

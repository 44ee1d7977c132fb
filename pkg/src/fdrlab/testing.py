"""Rescaled p-values, the step-up BH procedure, and error metrics.

The plug-in BH procedure rejects the hypotheses whose rescaled p-value
``p_i = 2 * tail(|y_i - u| / s)`` falls below the data-driven step-up
threshold.  The threshold is computed by the exact discrete fixed point of
the step-up rule, which coincides with the continuous maximization it is
defined through (covered by a brute-force equivalence test).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dist import NullModel, gaussian_model, gaussian_quantile, gaussian_tail

GAUSSIAN = gaussian_model()


class DegenerateScaleError(ValueError):
    """Raised when a zero scale would require fabricating p-values."""


@dataclass(frozen=True)
class Sample:
    """An observation vector with cached ascending order statistics."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("sample must be a nonempty 1-d vector")
        object.__setattr__(self, "values", v)

    @cached_property
    def sorted_view(self):
        return np.sort(self.values)

    @property
    def n(self):
        return self.values.size

    def order_stat(self, i):
        """The i-th ascending order statistic, 1-based."""
        return self.sorted_view[i - 1]


def as_sample(y):
    return y if isinstance(y, Sample) else Sample(np.asarray(y, dtype=float))


@dataclass(frozen=True)
class PValueVector:
    """Rescaled p-values together with the scaling that produced them."""

    p: np.ndarray
    scaling_used: tuple


@dataclass(frozen=True)
class RejectionSet:
    """Indices rejected by a procedure plus the realized threshold.

    ``indices`` are 0-based positions into the input sample.
    """

    indices: np.ndarray
    threshold: float
    alpha: float

    @property
    def n_rejections(self):
        return self.indices.size


def rescaled_pvalues(y, u, s, model: NullModel = GAUSSIAN):
    """Two-sided p-values of the observations under a plugged-in scaling.

    Gaussian model: ``p_i = 2 * tail((|y_i - u|) / s)``.  Location-only
    models (Subbotin, Laplace) carry no scale, so ``p_i = 2 * tail(|y_i - u|)``
    and any finite ``s`` other than 1 is rejected.  ``s = +inf`` is the
    paper's no-rejection convention and yields all-ones for every family.

    Raises
    ------
    DegenerateScaleError
        If s == 0 (e.g. the MAD of a degenerate sample).
    """
    y = as_sample(y)
    if s == 0:
        raise DegenerateScaleError("scale 0 does not define p-values (only s = +inf is allowed)")
    if not (s > 0):
        raise ValueError("scale must be positive or +inf")
    if np.isinf(s):
        p = np.ones(y.n)
    elif model.family == "gaussian":
        p = 2.0 * gaussian_tail(np.abs(y.values - u) / s)
    else:
        if s != 1.0:
            raise ValueError("location-only families take no scale; pass s=1 or s=inf")
        p = 2.0 * model.std_tail(np.abs(y.values - u))
    return PValueVector(p=np.clip(p, 0.0, 1.0), scaling_used=(float(u), float(s)))


def _pvals(p):
    if isinstance(p, PValueVector):
        p = p.p
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("p-values must lie in [0, 1]")
    return p


def _stepup_count(p_sorted, alpha):
    # the comparison p_(k) <= alpha k / n is evaluated as p_(k) n <= alpha k:
    # one rounding per side keeps exact rational ties (e.g. p equal to the
    # candidate threshold) decided the way real arithmetic would
    n = p_sorted.size
    ok = np.nonzero(p_sorted * n <= alpha * np.arange(1.0, n + 1.0))[0]
    return 0 if ok.size == 0 else int(ok[-1]) + 1


def bh_threshold(p, alpha):
    """Step-up threshold: max{t in [0,1] : #{p_i <= t} >= n t / alpha}.

    Equals alpha * khat / n with khat = max{k : p_(k) <= alpha k / n}
    (khat = 0 giving threshold 0).
    """
    p = _pvals(p)
    return float(alpha * _stepup_count(np.sort(p), alpha) / p.size)


def bh_procedure(y, u, s, alpha, model: NullModel = GAUSSIAN):
    """Plug-in BH at level alpha with scaling (u, s); returns a RejectionSet."""
    pv = rescaled_pvalues(y, u, s, model)
    return bh_from_pvalues(pv, alpha)


def bh_from_pvalues(p, alpha):
    """Apply the step-up rule to precomputed p-values.

    The rejection set is the khat smallest p-values (ties broken by index
    order), which is the exact-arithmetic evaluation of membership below
    the realized threshold.
    """
    pv = p if isinstance(p, PValueVector) else PValueVector(_pvals(p), (np.nan, np.nan))
    n = pv.p.size
    order = np.argsort(pv.p, kind="stable")
    khat = _stepup_count(pv.p[order], alpha)
    idx = np.sort(order[:khat])
    return RejectionSet(indices=idx, threshold=float(alpha * khat / n), alpha=alpha)


def _index_set(r):
    if isinstance(r, RejectionSet):
        return np.asarray(r.indices)
    return np.asarray(sorted(set(r)), dtype=int)


def fdp(rej, h0):
    """False discovery proportion |R & H0| / (|R| v 1)."""
    r = _index_set(rej)
    if r.size == 0:
        return 0.0
    h0 = set(np.asarray(list(h0), dtype=int).tolist())
    return sum(1 for i in r.tolist() if i in h0) / r.size


def tdp(rej, h1):
    """True discovery proportion |R & H1| / (|H1| v 1)."""
    h1 = set(np.asarray(list(h1), dtype=int).tolist())
    if len(h1) == 0:
        return 0.0
    r = _index_set(rej)
    return sum(1 for i in r.tolist() if i in h1) / len(h1)


def perturbation_envelope(t, x, y):
    """How far a p-value threshold can drift under a scaling perturbation.

    ``I_t(x, y) = 2 * tail(quantile(t/2) - x - y * quantile(t/2))`` for
    t in [0, 1) and x, y >= 0; the indicator of a rescaled p-value falling
    below t is dominated by the indicator of the reference p-value falling
    below I_t evaluated at the relative location/scale errors.  The return
    value is clipped to [0, 1] so it can be used as a p-value threshold.
    """
    if not (0.0 <= t < 1.0):
        raise ValueError("perturbation_envelope requires t in [0, 1)")
    if x < 0 or y < 0:
        raise ValueError("perturbation offsets must be nonnegative")
    if t == 0.0:
        if y < 1.0:
            return 0.0
        if y == 1.0:
            return min(1.0, 2.0 * gaussian_tail(-x))  # continuous limit
        return 1.0
    z = gaussian_quantile(t / 2.0)
    return float(np.clip(2.0 * gaussian_tail(z - x - y * z), 0.0, 1.0))

"""Least-favorable two-group mixtures and the sparsity-boundary constants.

Each construction produces a single mixture density h admitting two exact
two-group decompositions with different nulls, so no procedure can tell
which null generated the data:

* variance kind:  h = max((1-pi1) phi, (1-pi2) phi(./sigma2)/sigma2),
  solved for sigma2 > 1 so both alternative components integrate to one;
* location kind:  h = max((1-pi1) phi, (1-pi2) phi(. - mu)), solved for
  mu in (0, 2);
* general location kind: same with an arbitrary symmetric non-increasing
  shape g, where mu has the closed form 2 * quantile((1-2 pi)/(2 (1-pi))).

The crossing point u0 separates the supports of the two alternative
densities f1 (outside/right) and f2 (inside/left).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dist import NullModel, gaussian_pdf, gaussian_quantile, gaussian_tail

VARIANCE_BRACKET = (1.0 + 1e-9, 100.0)
LOCATION_BRACKET = (1e-9, 2.0)
_BISECT_TOL = 1e-12


class NoRootError(RuntimeError):
    """The solver bracket contains no sign change (precondition violated)."""


def _smallest_root(f, lo, hi, n_scan=4096):
    """Bisect the first sign change of f on [lo, hi] to bracket width 1e-12."""
    grid = np.linspace(lo, hi, n_scan)
    vals = np.array([f(g) for g in grid])
    sign = np.signbit(vals)
    flips = np.nonzero(sign[:-1] != sign[1:])[0]
    exact = np.nonzero(vals == 0.0)[0]
    if exact.size and (not flips.size or exact[0] <= flips[0]):
        return float(grid[exact[0]])
    if not flips.size:
        raise NoRootError("no sign change in bracket; check the mixing proportions")
    a, b = float(grid[flips[0]]), float(grid[flips[0] + 1])
    fa = f(a)
    while b - a > _BISECT_TOL:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


@dataclass(frozen=True)
class MixtureInstance:
    """A solved least-favorable pair; see the module docstring."""

    kind: str  # variance_gaussian | location_gaussian | location_general
    pi1: float
    pi2: float
    solved_param: float  # sigma2 (variance kind) or mu (location kinds)
    u0: float
    residual: float
    g_base: NullModel = None

    @property
    def sigma2(self):
        if self.kind != "variance_gaussian":
            raise AttributeError("sigma2 is defined for the variance kind only")
        return self.solved_param

    @property
    def mu(self):
        if self.kind == "variance_gaussian":
            raise AttributeError("mu is defined for the location kinds only")
        return self.solved_param

    # -- component densities -------------------------------------------------

    def _base_pdf(self, x):
        if self.kind == "location_general":
            return self.g_base.density(x)
        return gaussian_pdf(x)

    def null1_density(self, x):
        """Density of the first decomposition's null (standard shape)."""
        return self._base_pdf(np.asarray(x, dtype=float))

    def null2_density(self, x):
        """Density of the second decomposition's null (inflated or shifted)."""
        x = np.asarray(x, dtype=float)
        if self.kind == "variance_gaussian":
            return gaussian_pdf(x / self.sigma2) / self.sigma2
        return self._base_pdf(x - self.mu)

    def mixture_density(self, x):
        return np.maximum((1.0 - self.pi1) * self.null1_density(x),
                          (1.0 - self.pi2) * self.null2_density(x))

    def f1_density(self, x):
        """Alternative of the first decomposition; supported outside/right of u0."""
        d = (1.0 - self.pi2) * self.null2_density(x) - (1.0 - self.pi1) * self.null1_density(x)
        return np.maximum(d, 0.0) / self.pi1

    def f2_density(self, x):
        """Alternative of the second decomposition; supported inside/left of u0."""
        d = (1.0 - self.pi1) * self.null1_density(x) - (1.0 - self.pi2) * self.null2_density(x)
        return np.maximum(d, 0.0) / self.pi2


def solve_variance_mixture(pi1, pi2):
    """Solve the variance-inflation pair for sigma2 in (1, 100].

    Root of ``2[(1-pi2) tail(u0/s) - (1-pi1) tail(u0)] = pi1`` with
    ``u0^2 = 2 s^2/(s^2-1) log(s (1-pi1)/(1-pi2))``; the smallest root is
    taken.  Requires 0 < pi1 <= pi2 <= 1/4.
    """
    if not (0.0 < pi1 <= pi2 <= 0.25):
        raise ValueError("variance mixture requires 0 < pi1 <= pi2 <= 1/4")

    def crossing(s):
        return math.sqrt(2.0 * s * s / (s * s - 1.0) * math.log(s * (1.0 - pi1) / (1.0 - pi2)))

    def resid(s):
        u0 = crossing(s)
        return 2.0 * ((1.0 - pi2) * gaussian_tail(u0 / s) - (1.0 - pi1) * gaussian_tail(u0)) - pi1

    s2 = _smallest_root(resid, *VARIANCE_BRACKET)
    return MixtureInstance(kind="variance_gaussian", pi1=pi1, pi2=pi2,
                           solved_param=s2, u0=crossing(s2), residual=resid(s2))


def solve_location_mixture(pi1, pi2):
    """Solve the Gaussian location pair for mu in (0, 2).

    Root of ``(1-pi2) tail(k0 - mu/2) - (1-pi1) tail(k0 + mu/2) = pi1`` with
    ``k0 = log((1-pi1)/(1-pi2)) / mu`` (zero when pi1 = pi2); the crossing
    point is u0 = k0 + mu/2.  Requires 0 < pi1 <= pi2 < 1/2.
    """
    if not (0.0 < pi1 <= pi2 < 0.5):
        raise ValueError("location mixture requires 0 < pi1 <= pi2 < 1/2")
    logratio = math.log((1.0 - pi1) / (1.0 - pi2))

    def resid(mu):
        k0 = logratio / mu
        return ((1.0 - pi2) * gaussian_tail(k0 - mu / 2.0)
                - (1.0 - pi1) * gaussian_tail(k0 + mu / 2.0) - pi1)

    mu = _smallest_root(resid, *LOCATION_BRACKET)
    return MixtureInstance(kind="location_gaussian", pi1=pi1, pi2=pi2,
                           solved_param=mu, u0=logratio / mu + mu / 2.0, residual=resid(mu))


def general_location_mixture(g: NullModel, pi):
    """Equal-weight location pair for a symmetric non-increasing shape g.

    Closed form: ``mu = 2 * quantile((1 - 2 pi) / (2 (1 - pi)))`` on the
    standardized shape, with crossing point u0 = mu / 2.
    """
    if not (0.0 < pi < 0.5):
        raise ValueError("general location mixture requires pi in (0, 1/2)")
    if g.family == "tabulated":
        raise ValueError("general location mixture needs a parametric shape")
    mu = 2.0 * float(g.std_quantile((1.0 - 2.0 * pi) / (2.0 * (1.0 - pi))))
    base = NullModel(g.family, theta=0.0, sigma=1.0, zeta=g.zeta)
    resid = (1.0 - pi) * (base.std_tail(-mu / 2.0) - base.std_tail(mu / 2.0)) - pi
    return MixtureInstance(kind="location_general", pi1=pi, pi2=pi, solved_param=mu,
                           u0=mu / 2.0, residual=float(resid), g_base=base)


# -- sampling -----------------------------------------------------------------


def _uniform_open(rng, size):
    # keep inverse-cdf arguments strictly inside (0, 1)
    u = rng.random(size)
    return np.clip(u, 1e-16, 1.0 - 1e-16)


def _tail_base(m, z):
    if m.kind == "location_general":
        return m.g_base.std_tail(z)
    return gaussian_tail(z)


def _quantile_base(m, q):
    """Upper-tail quantile of the base shape on the full range (0, 1).

    Extends the (0, 1/2] quantile of asymmetrically-restricted shapes
    (Laplace) by symmetry.
    """
    q = np.asarray(q, dtype=float)
    qm = np.clip(np.minimum(q, 1.0 - q), 1e-300, 0.5)
    if m.kind == "location_general":
        y = np.asarray(m.g_base.std_quantile(qm))
    else:
        y = np.asarray(gaussian_quantile(qm))
    return np.where(q <= 0.5, y, -y)


def _sample_null1(m, size, rng):
    return _quantile_base(m, _uniform_open(rng, size))


def _sample_null2(m, size, rng):
    z = _sample_null1(m, size, rng)
    if m.kind == "variance_gaussian":
        return m.sigma2 * z
    return m.mu + z


def sample_f1(m, size, rng):
    """Draw from f1 by rejection from the dominating second-decomposition null.

    The proposal is that null restricted to the f1 side of u0; acceptance
    probability is 1 - (1-pi1) null1 / ((1-pi2) null2), bounded by 1 on the
    support.
    """
    out = np.empty(size)
    have = 0
    w = (1.0 - m.pi1) / (1.0 - m.pi2)
    while have < size:
        batch = max(2 * (size - have), 256)
        u = _uniform_open(rng, batch)
        if m.kind == "variance_gaussian":
            # |x| > u0 under N(0, sigma2^2): symmetric two-sided tail draw
            mag = m.sigma2 * gaussian_quantile(u * gaussian_tail(m.u0 / m.sigma2))
            sgn = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
            x = sgn * mag
        else:
            # x > u0 under the shifted null: tail probability at u0 is tail(u0 - mu)
            x = m.mu + _quantile_base(m, u * _tail_base(m, m.u0 - m.mu))
        accept = rng.random(batch) <= 1.0 - w * m.null1_density(x) / m.null2_density(x)
        xa = x[accept]
        take = min(xa.size, size - have)
        out[have:have + take] = xa[:take]
        have += take
    return out


def sample_f2(m, size, rng):
    """Draw from f2 by rejection from the first-decomposition null on its side."""
    out = np.empty(size)
    have = 0
    w = (1.0 - m.pi2) / (1.0 - m.pi1)
    while have < size:
        batch = max(2 * (size - have), 256)
        u = _uniform_open(rng, batch)
        if m.kind == "variance_gaussian":
            # |x| < u0 under N(0, 1)
            lo = gaussian_tail(m.u0)
            mag = gaussian_quantile(lo + u * (0.5 - lo))
            sgn = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
            x = sgn * mag
        else:
            # x < u0 under the standard shape: upper-tail prob 1 - u*(1 - tail(u0))
            x = _quantile_base(m, 1.0 - u * (1.0 - _tail_base(m, m.u0)))
        accept = rng.random(batch) <= 1.0 - w * m.null2_density(x) / m.null1_density(x)
        xa = x[accept]
        take = min(xa.size, size - have)
        out[have:have + take] = xa[:take]
        have += take
    return out


def sample_two_group(m, size, rng, decomposition=1):
    """Sample h by the two-stage scheme, returning (values, labels).

    Labels are 1 on coordinates drawn from the alternative component of the
    requested decomposition.  Both decompositions generate the same mixture
    law; the labels are what differ.
    """
    if decomposition == 1:
        pi, null_draw, alt_draw = m.pi1, _sample_null1, sample_f1
    elif decomposition == 2:
        pi, null_draw, alt_draw = m.pi2, _sample_null2, sample_f2
    else:
        raise ValueError("decomposition must be 1 or 2")
    z = rng.random(size) < pi
    values = np.empty(size)
    n_null = int((~z).sum())
    values[~z] = null_draw(m, n_null, rng)
    values[z] = alt_draw(m, size - n_null, rng)
    return values, z


def sample_mixture(m, size, component, rng):
    """Draw from one component of a solved instance.

    ``component``:
        ``h``            the full mixture, via the two-stage Bernoulli
                         scheme of the first decomposition;
        ``null``         the second decomposition's null (the inflated or
                         shifted one);
        ``alternative``  f1, the separated alternative of the first
                         decomposition.
    """
    if component == "h":
        values, _ = sample_two_group(m, size, rng, decomposition=1)
        return values
    if component == "null":
        return _sample_null2(m, size, rng)
    if component == "alternative":
        return sample_f1(m, size, rng)
    raise ValueError("component must be 'h', 'null' or 'alternative'")


# -- boundary constants --------------------------------------------------------


def _maybe_sqrt_fraction(x: Fraction):
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def boundary_constants(alpha):
    """The location-model impossibility thresholds (pi_alpha, pi*_alpha).

    ``pi_alpha = (sqrt(1-alpha) - (1-alpha)) / alpha`` marks the sparsity
    fraction above which no scaling can mimic the oracle for any shape;
    ``pi*_alpha = (1 - sqrt(alpha)) / (2 - sqrt(alpha))`` bounds the regime
    of the sharper Laplace-specific loss.  Both lie in (0, 1/2), with
    pi*_alpha <= pi_alpha.  Passing a ``fractions.Fraction`` whose relevant
    square roots are rational returns exact Fractions.
    """
    if not (0 < alpha < 1):
        raise ValueError("boundary constants require alpha in (0, 1)")
    if isinstance(alpha, Fraction):
        one = Fraction(1)
        r1 = _maybe_sqrt_fraction(one - alpha)
        ra = _maybe_sqrt_fraction(alpha)
        pi_a = (r1 - (one - alpha)) / alpha if r1 is not None else \
            (math.sqrt(1.0 - alpha) - (1.0 - float(alpha))) / float(alpha)
        pi_star = (one - ra) / (2 - ra) if ra is not None else \
            (1.0 - math.sqrt(alpha)) / (2.0 - math.sqrt(alpha))
        return pi_a, pi_star
    a = float(alpha)
    return ((math.sqrt(1.0 - a) - (1.0 - a)) / a,
            (1.0 - math.sqrt(a)) / (2.0 - math.sqrt(a)))


def laplace_inflation(pi):
    """Laplace-model first-rejection inflation eta(pi) and the gap zeta(pi).

    ``eta(pi) = (1-pi)/2 * (1 + e^mu)`` with ``e^mu = (1-pi)^2/(1-2 pi)^2``;
    ``zeta(pi)`` subtracts the best achievable rejection probability,
    ``4 / (1 + e^-mu)`` scaled the same way.  Both are exact for Fraction
    inputs.  Singular at pi = 1/2.
    """
    half = Fraction(1, 2) if isinstance(pi, Fraction) else 0.5
    if not (0 < pi < half):
        raise ValueError("laplace inflation requires pi in (0, 1/2)")
    one = Fraction(1) if isinstance(pi, Fraction) else 1.0
    emu = (one - pi) ** 2 / (one - 2 * pi) ** 2
    eta = (one - pi) / 2 * (one + emu)
    zeta = (one - pi) / 2 * (one + emu - 4 / (one + 1 / emu))
    return eta, zeta

"""Mixture construction contracts: solved roots, identities, and samplers."""

from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from fdrlab import (NoRootError, boundary_constants, gaussian_model, gaussian_pdf,
                    gaussian_quantile, gaussian_tail, general_location_mixture,
                    laplace_inflation, laplace_model, sample_f2,
                    sample_mixture, sample_two_group, solve_location_mixture,
                    solve_variance_mixture, subbotin_model)

# frozen from the pre-build mpmath oracle
SIGMA2_SQ_02 = 2.877923449107898      # variance kind, pi1 = pi2 = 0.2
SIGMA2_18_14 = 1.5137477682897047     # variance kind, pi1 = 1/8, pi2 = 1/4
U0_18_14 = 1.4206571456164667
MU_QUARTER = 0.8614545985913221       # location kind, pi1 = pi2 = 1/4


def test_variance_solver_equal_proportions():
    m = solve_variance_mixture(0.2, 0.2)
    assert m.sigma2**2 == pytest.approx(SIGMA2_SQ_02, rel=1e-9)
    assert abs(m.residual) <= 1e-10


def test_variance_solver_unequal_proportions():
    m = solve_variance_mixture(1.0 / 8.0, 1.0 / 4.0)
    assert m.sigma2 == pytest.approx(SIGMA2_18_14, rel=1e-9)
    assert m.u0 == pytest.approx(U0_18_14, rel=1e-9)
    assert abs(m.residual) <= 1e-10


def test_variance_solver_preconditions():
    for bad in [(0.3, 0.2), (0.0, 0.2), (0.2, 0.3)]:
        with pytest.raises(ValueError):
            solve_variance_mixture(*bad)


def test_location_solver_equal_proportions():
    m = solve_location_mixture(0.25, 0.25)
    assert m.mu == pytest.approx(MU_QUARTER, rel=1e-9)
    assert m.mu == pytest.approx(2.0 * gaussian_quantile(1.0 / 3.0), rel=1e-10)
    assert m.u0 == pytest.approx(m.mu / 2.0, rel=1e-12)
    assert abs(m.residual) <= 1e-10


@pytest.mark.parametrize("pi", [0.1, 0.25, 0.4])
def test_location_solver_matches_quadrature(pi):
    m = solve_location_mixture(pi, pi)
    total, err = integrate.quad(
        lambda x: max(gaussian_pdf(x - m.mu) - gaussian_pdf(x), 0.0) * (1 - pi) / pi,
        m.u0, m.u0 + 40.0, epsabs=1e-11)
    assert total == pytest.approx(1.0, abs=1e-9)


def test_lemma_direction_scans():
    # the solved parameters stay above the lemma rates; the constants are
    # exhibited empirically, not asserted from theory
    pairs = [(p2 / r, p2) for p2 in (0.05, 0.1, 0.2, 0.25) for r in (1.0, 2.0, 5.0)]
    c_sigma = min((solve_variance_mixture(p1, p2).sigma2 - 1.0)
                  * (1.0 + np.log(p2 / p1)) / p2 for p1, p2 in pairs)
    assert c_sigma > 0.0
    pairs = [(p2 / r, p2) for p2 in (0.05, 0.2, 0.4) for r in (1.0, 2.0, 5.0)]
    c_mu = min(solve_location_mixture(p1, p2).mu
               * np.sqrt(1.0 + np.log(p2 / p1)) / p2 for p1, p2 in pairs)
    assert c_mu > 0.0


def test_general_location_closed_forms():
    m = general_location_mixture(laplace_model(), 0.25)
    assert m.mu == pytest.approx(2.0 * np.log(1.5), rel=1e-12)
    assert m.u0 == pytest.approx(np.log(1.5), rel=1e-12)
    tiny = general_location_mixture(gaussian_model(), 1e-6)
    assert 0.0 < tiny.mu < 1e-4
    with pytest.raises(ValueError):
        general_location_mixture(gaussian_model(), 0.5)


@pytest.mark.parametrize("shape", [gaussian_model(), laplace_model(), subbotin_model(1.5)])
@pytest.mark.parametrize("pi", [0.1, 0.25, 0.4])
def test_general_location_normalization(shape, pi):
    m = general_location_mixture(shape, pi)
    # break at the |x| kink of the base density so the quadrature converges
    total, err = integrate.quad(lambda x: m.f2_density(x), -40.0, m.u0,
                                points=[0.0], epsabs=1e-12, limit=200)
    assert total == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("inst", [
    solve_variance_mixture(0.2, 0.2),
    solve_variance_mixture(1.0 / 8.0, 1.0 / 4.0),
    solve_location_mixture(0.25, 0.25),
    solve_location_mixture(0.1, 0.3),
])
def test_mixture_identity_pointwise(inst):
    x = np.linspace(-10.0, 10.0, 10_000)
    h = inst.mixture_density(x)
    first = (1 - inst.pi1) * inst.null1_density(x) + inst.pi1 * inst.f1_density(x)
    second = (1 - inst.pi2) * inst.null2_density(x) + inst.pi2 * inst.f2_density(x)
    np.testing.assert_allclose(first, h, atol=1e-10)
    np.testing.assert_allclose(second, h, atol=1e-10)


def test_crossing_point_separates_supports():
    m = solve_variance_mixture(0.15, 0.2)
    x = np.linspace(-8.0, 8.0, 4001)
    inner = np.abs(x) < m.u0 - 1e-9
    outer = np.abs(x) > m.u0 + 1e-9
    lhs = (1 - m.pi1) * m.null1_density(x)
    rhs = (1 - m.pi2) * m.null2_density(x)
    assert np.all(lhs[inner] > rhs[inner])
    assert np.all(lhs[outer] < rhs[outer])
    assert np.all(m.f1_density(x)[inner] == 0.0)
    assert np.all(m.f2_density(x)[outer] == 0.0)


def test_sampling_moments_and_support():
    m = solve_variance_mixture(0.2, 0.2)
    rng = np.random.default_rng(101)
    null = sample_mixture(m, 100_000, "null", rng)
    assert null.mean() == pytest.approx(0.0, abs=0.03)
    assert null.var() == pytest.approx(m.sigma2**2, abs=0.08)
    alt = sample_mixture(m, 20_000, "alternative", rng)
    assert np.all(np.abs(alt) > m.u0)
    f2 = sample_f2(m, 20_000, rng)
    assert np.all(np.abs(f2) < m.u0)


def test_h_sample_kolmogorov_distance():
    m = solve_variance_mixture(0.2, 0.2)
    rng = np.random.default_rng(7)
    n = 100_000
    draws = np.sort(sample_mixture(m, n, "h", rng))

    def mixture_cdf(x):
        # closed form: h equals the wide component outside [-u0, u0] and the
        # narrow one inside
        w1, w2, s2, u0 = 1 - m.pi1, 1 - m.pi2, m.sigma2, m.u0
        lo = w2 * (1.0 - gaussian_tail(-u0 / s2))
        mid = lo + w1 * (gaussian_tail(-u0) - gaussian_tail(np.minimum(x, u0)))
        out = np.where(x <= -u0, w2 * (1.0 - gaussian_tail(x / s2)), mid)
        hi = lo + w1 * (gaussian_tail(-u0) - gaussian_tail(u0))
        return np.where(x >= u0, hi + w2 * (gaussian_tail(u0 / s2) - gaussian_tail(x / s2)), out)

    H = mixture_cdf(draws)
    ecdf_hi = np.arange(1, n + 1) / n
    ecdf_lo = np.arange(0, n) / n
    ks = max(np.max(ecdf_hi - H), np.max(H - ecdf_lo))
    dkw = np.sqrt(np.log(2.0 / 0.01) / (2.0 * n))
    assert ks <= dkw


def test_h_sampling_is_decomposition_free():
    m = solve_location_mixture(0.2, 0.25)
    a = sample_mixture(m, 5000, "h", np.random.default_rng(55))
    b = sample_mixture(m, 5000, "h", np.random.default_rng(55))
    np.testing.assert_array_equal(a, b)


def test_two_group_labels():
    m = solve_location_mixture(0.3, 0.3)
    rng = np.random.default_rng(13)
    y, z = sample_two_group(m, 50_000, rng, decomposition=1)
    assert z.mean() == pytest.approx(0.3, abs=0.01)
    assert np.all(y[z] > m.u0)  # f1 support
    y2, z2 = sample_two_group(m, 50_000, rng, decomposition=2)
    assert np.all(y2[z2] < m.u0)  # f2 support


def test_boundary_constants():
    pi_a, pi_star = boundary_constants(Fraction(1, 4))
    assert pi_star == Fraction(1, 3)
    pi_a_f, pi_star_f = boundary_constants(0.25)
    assert pi_a_f == pytest.approx((np.sqrt(0.75) - 0.75) / 0.25, rel=1e-15)
    assert pi_a_f == pytest.approx(0.4641016151377544, rel=1e-12)
    # both thresholds live in (0, 1/2); the Laplace-loss threshold sits at or
    # below the general impossibility threshold for every level
    for alpha in np.linspace(0.01, 0.99, 100):
        pi_a, pi_star = boundary_constants(float(alpha))
        assert 0.0 < pi_a < 0.5
        assert 0.0 < pi_star < 0.5
        assert pi_star <= pi_a
    with pytest.raises(ValueError):
        boundary_constants(1.0)


def test_laplace_inflation():
    eta, zeta = laplace_inflation(Fraction(1, 4))
    assert eta == Fraction(39, 32)
    assert float(eta) == 1.21875
    grid = np.linspace(0.004, 0.49, 100)
    etas, zetas = zip(*(laplace_inflation(float(p)) for p in grid))
    etas, zetas = np.array(etas), np.array(zetas)
    assert np.all(etas > 1.0)
    assert np.all(np.diff(etas) > 0)
    assert np.all(zetas > 0.0)
    assert np.all(np.diff(zetas) > 0)
    with pytest.raises(ValueError):
        laplace_inflation(0.5)


def test_no_root_error_surface():
    with pytest.raises((NoRootError, ValueError)):
        solve_variance_mixture(1e-30, 1e-30)

"""Harness contracts: generation moments, determinism, metrics, criteria."""

import json

import numpy as np
import pytest

from fdrlab import (ScenarioConfig, adversarial_location_experiment, estimate_criteria,
                    generate_dataset, replication_rng, run_experiment,
                    sample_zero_located, zero_located_sigma)


def _cfg(**kw):
    base = dict(n=1000, k=0, correlation="independent", alternative="standard",
                theta=0.0, sigma=1.0, alpha_list=(0.2,), n_replications=5, seed=7)
    base.update(kw)
    return ScenarioConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        _cfg(k=1000)
    with pytest.raises(ValueError):
        _cfg(correlation="ring")
    with pytest.raises(ValueError):
        _cfg(alternative="bimodal")
    with pytest.raises(ValueError):
        _cfg(alpha_list=(0.0,))
    assert _cfg(k=300).identifiable
    assert not _cfg(k=600).identifiable


def test_config_json_round_trip(tmp_path):
    cfg = _cfg(k=30, correlation="block", alternative="cauchy_half", seed=123)
    path = tmp_path / "cfg.json"
    cfg.to_json(path)
    assert ScenarioConfig.from_json(path) == cfg


def test_all_null_moments():
    cfg = _cfg(theta=1.5, sigma=2.0, n=2000)
    draws = np.concatenate([generate_dataset(cfg, replication_rng(1, r))[0]
                            for r in range(50)])
    assert draws.mean() == pytest.approx(1.5, abs=0.02)
    assert draws.var() == pytest.approx(4.0, abs=0.05)


def test_standard_alternative_means():
    cfg = _cfg(k=400)
    y, h0, h1 = generate_dataset(cfg, replication_rng(2, 0))
    assert h0.size == 600 and h1.size == 400
    mags = []
    for r in range(50):
        y, _, h1 = generate_dataset(cfg, replication_rng(2, r))
        mags.append(np.abs(y[h1]))
    mags = np.concatenate(mags)
    # means are uniform on [-5,-2] U [2,5] plus unit noise
    assert 2.0 < mags.mean() < 4.5
    assert mags.max() < 5.0 + 6.0


def test_zero_located_sigma_value():
    sigma, u0 = zero_located_sigma()
    assert sigma == pytest.approx(1.053028854217028, rel=1e-9)
    assert 1.045 <= sigma <= 1.061
    draws = sample_zero_located(np.random.default_rng(3), 5000)
    assert np.all(np.abs(draws) < u0)


def test_half_replacement_supports():
    _, u0 = zero_located_sigma()
    cfg = _cfg(k=100, alternative="zero_located_half")
    y, _, h1 = generate_dataset(cfg, replication_rng(5, 0))
    # the second half of the alternative block is replaced by near-null draws
    assert np.all(np.abs(y[h1[-50:]]) < u0)
    cauchy_cfg = _cfg(k=100, alternative="cauchy_half")
    extremes = 0
    for r in range(20):
        y, _, h1 = generate_dataset(cauchy_cfg, replication_rng(5, r))
        extremes += np.abs(y[h1[-50:]]).max() > 20.0
    assert extremes >= 5  # heavy tails show up routinely


def test_equicorrelation_moment():
    # the shared factor makes per-replication pair averages heavily dependent,
    # so precision comes from replications, not pairs
    cfg = _cfg(correlation="equicorrelated", n=200)
    acc = 0.0
    reps = 10_000
    for r in range(reps):
        y, _, _ = generate_dataset(cfg, replication_rng(11, r))
        s, s2 = y.sum(), (y**2).sum()
        acc += (s * s - s2) / (y.size * (y.size - 1))
    assert acc / reps == pytest.approx(0.2, abs=0.01)


def test_block_correlation_moment():
    cfg = _cfg(correlation="block", n=400)
    within = 0.0
    across = 0.0
    reps = 400
    for r in range(reps):
        y, _, _ = generate_dataset(cfg, replication_rng(13, r))
        blocks = y.reshape(-1, 20)
        s, s2 = blocks.sum(axis=1), (blocks**2).sum(axis=1)
        within += ((s * s - s2) / (20 * 19)).mean()
        across += (blocks[::2, 0] * blocks[1::2, 0]).mean()
    assert within / reps == pytest.approx(0.5, abs=0.02)
    assert across / reps == pytest.approx(0.0, abs=0.02)


def test_run_experiment_determinism_and_order_independence():
    cfg = _cfg(k=30, n=400, n_replications=20, alpha_list=(0.05, 0.2))
    r1 = run_experiment(cfg, ("oracle", "median_mad"))
    r2 = run_experiment(cfg, ("oracle", "median_mad"))
    assert r1.rows == r2.rows
    r3 = run_experiment(cfg, ("median_mad", "oracle"))
    for m in ("oracle", "median_mad"):
        for a in (0.05, 0.2):
            assert r1.row(m, a) == r3.row(m, a)


def test_run_experiment_ranges_and_k0():
    cfg = _cfg(k=0, n=300, n_replications=30)
    rep = run_experiment(cfg, ("oracle", "median_mad", "trim_mad", "known_sigma_median"))
    for r in rep.rows:
        assert 0.0 <= r["fdr"] <= 1.0
        assert 0.0 <= r["tdr"] <= 1.0
        assert r["fdr_se"] >= 0.0 and r["tdr_se"] >= 0.0
        assert r["tdr"] == 0.0  # no alternatives to discover


def test_report_files(tmp_path):
    cfg = _cfg(k=10, n=200, n_replications=10)
    rep = run_experiment(cfg, ("oracle",))
    rep.to_csv(tmp_path / "m.csv")
    rep.to_json(tmp_path / "m.json")
    header = (tmp_path / "m.csv").read_text().splitlines()[0]
    assert header == "method,alpha,fdr,fdr_se,tdr,tdr_se,reps"
    blob = json.loads((tmp_path / "m.json").read_text())
    assert blob["metadata"]["alternative_means"].startswith("redrawn")
    assert blob["rows"][0]["method"] == "oracle"


def test_oracle_fdr_near_alpha():
    # the alpha/pi0 level rule cancels the n0/n factor
    cfg = _cfg(k=100, n=1000, n_replications=300, alpha_list=(0.2,), seed=31)
    rep = run_experiment(cfg, ("oracle",))
    r = rep.row("oracle", 0.2)
    assert abs(r["fdr"] - 0.2) <= 3.0 * r["fdr_se"]


def test_estimate_criteria():
    cfgs = [_cfg(k=30, n=300, n_replications=20), _cfg(k=90, n=300, n_replications=20)]
    i_hat, ii_hat = estimate_criteria(cfgs, "oracle", 0.2)
    assert ii_hat == 0.0  # the oracle is never strictly beaten by itself
    assert 0.0 <= i_hat <= 1.0
    i_med, ii_med = estimate_criteria(cfgs, "median_mad", 0.2)
    assert 0.0 <= i_med <= 1.0 and 0.0 <= ii_med <= 1.0
    with pytest.raises(ValueError):
        estimate_criteria([], "oracle", 0.2)
    with pytest.raises(ValueError):
        estimate_criteria(cfgs, "wishful", 0.2)


def test_adversarial_location_smoke():
    fdps = adversarial_location_experiment(n=2000, k_over_n=0.3, alpha=0.2,
                                           n_replications=20, seed=3)
    assert fdps.shape == (20,)
    assert np.all((0.0 <= fdps) & (fdps <= 1.0))
    assert fdps.mean() > 0.25  # the dense regime misbehaves even at small n

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from monoboot import (
    BootstrapConfig,
    RegressionSample,
    ScenarioSpec,
    SlseFit,
    bootstrap_diffs,
    confidence_band,
    draw_bootstrap_sample,
    fit_lse,
    gen_sample,
    make_residuals,
    nw_at,
    percentile_ci,
    sigma_hall_kay,
    sigma_residual,
    slse_at,
    slse_curve,
    substream,
)
from monoboot.bootstrap import HALL_KAY_D
from oracles import brute_isotonic, slse_quad

THEORY_BIAS = 0.5 * 0.25 * 2 / 9
THEORY_SD = math.sqrt(0.01 * (350 / 429) / 0.5)


@pytest.fixture
def sample():
    return gen_sample(ScenarioSpec("quadratic", 0.1, 100), substream(99, 0))


def test_make_residuals_examples():
    s = RegressionSample([0.2, 0.5, 0.8], [1.0, 2.0, 3.0])
    rs = make_residuals(s, [1.0, 2.0, 3.0])
    assert_array_equal(rs.residuals, 0.0)
    rs = make_residuals(s, [0.0, 0.0, 0.0])
    assert_allclose(rs.residuals, [-1, 0, 1], atol=1e-15)


def test_residuals_centered():
    rng = np.random.default_rng(3)
    for n in [1, 2, 17, 500]:
        s = RegressionSample(np.arange(1, n + 1) / (n + 1), rng.normal(1e3, 50, n))
        rs = make_residuals(s, rng.normal(size=n))
        assert abs(rs.residuals.sum()) <= 1e-10 * n * max(1.0, np.abs(rs.residuals).max())


def test_draw_bootstrap_sample():
    s = RegressionSample([0.2, 0.5, 0.8], [1.0, 2.0, 3.0])
    rs = make_residuals(s, [1.0, 2.0, 3.0])
    star = draw_bootstrap_sample(s.xs, rs, substream(0, 0))
    assert_array_equal(star.ys, [1.0, 2.0, 3.0])
    assert_array_equal(star.xs, s.xs)
    one = RegressionSample([0.5], [4.0])
    assert draw_bootstrap_sample(one.xs, make_residuals(one, [1.5]), substream(0, 0)).ys[0] == 1.5
    rs = make_residuals(s, [0.0, 0.0, 0.0])
    a = draw_bootstrap_sample(s.xs, rs, substream(7, 3)).ys
    b = draw_bootstrap_sample(s.xs, rs, substream(7, 3)).ys
    assert_array_equal(a, b)


def test_percentile_ci_examples():
    assert percentile_ci(np.zeros(50), 1.5, 0.05, 1.0) == (1.5, 1.5)
    d = np.arange(1, 1001) / 1000
    lo, hi = percentile_ci(d, 0.0, 0.05, 1.0)
    assert lo == -0.975 and hi == -0.025
    # Rank ceil(qB) is symmetric when qB is not an integer.
    sym = np.concatenate([d, [0.0], -d])
    lo, hi = percentile_ci(sym, 2.0, 0.1, 1.0)
    assert abs((lo + hi) / 2 - 2.0) < 1e-12
    lo, hi = percentile_ci(d, 0.0, 0.05, 2.0)
    assert lo == -1.95 and hi == -0.05
    with pytest.raises(ValueError):
        percentile_ci([], 0.0, 0.05)


def test_percentile_ci_sort_oracle():
    rng = np.random.default_rng(4)
    for B in [2, 3, 10, 999, 1000]:
        d = rng.normal(size=B)
        srt = sorted(d)
        for alpha in [0.05, 0.1, 0.5]:
            lo_k = max(1, math.ceil(round(alpha / 2 * B, 9)))
            hi_k = max(1, math.ceil(round((1 - alpha / 2) * B, 9)))
            lo, hi = percentile_ci(d, 0.0, alpha, 1.0)
            assert hi == -srt[lo_k - 1] and lo == -srt[hi_k - 1]
            assert lo <= hi


def test_sigma_residual():
    assert sigma_residual(np.zeros(4)) == 0.0
    assert abs(sigma_residual(np.array([-1.0, 0.0, 1.0])) ** 2 - 2 / 3) < 1e-15


def test_hall_kay_coefficients_and_examples():
    d = np.array(HALL_KAY_D)
    assert abs(d.sum()) < 1e-12
    assert abs((d * d).sum() - 1) < 1e-12
    assert sigma_hall_kay(np.full(10, 3.7)) < 1e-14
    assert abs(sigma_hall_kay([1.0, 0.0, 0.0]) ** 2 - (3 + math.sqrt(5)) / 8) < 1e-15
    with pytest.raises(ValueError):
        sigma_hall_kay([1.0, 2.0])


def test_variance_estimators_on_pure_noise():
    spec = ScenarioSpec(lambda x: np.full_like(x, 0.3), 0.1, 500)
    res, hk = [], []
    for m in range(100):
        s = gen_sample(spec, substream(5, m))
        plan_h0 = 0.7 * 500 ** (-1 / 9)
        pilot = SlseFit(fit_lse(s), plan_h0, plan_h0)
        res.append(sigma_residual(make_residuals(s, slse_curve(pilot, s.xs))) ** 2)
        hk.append(sigma_hall_kay(s.ys) ** 2)
    assert abs(np.mean(res) - 0.01) < 0.15 * 0.01
    assert abs(np.mean(hk) - 0.01) < 0.15 * 0.01


def test_degenerate_resampling_constant_signal():
    s = RegressionSample(np.arange(1, 31) / 31, np.full(30, 2.0))
    for est in ["slse", "nw"]:
        cfg = BootstrapConfig(B=5, estimator=est)
        d = bootstrap_diffs(s, cfg, [0.05, 0.5, 0.95])
        assert_allclose(d, 0.0, atol=1e-12)
        band = confidence_band(s, cfg, [0.05, 0.5, 0.95])
        assert_allclose(band.lower, band.estimate, atol=1e-12)
        assert_allclose(band.upper, band.estimate, atol=1e-12)


def test_trace_replay_small_case():
    xs = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    s = RegressionSample(xs, [0.2, 0.1, 0.6, 0.5, 0.9])
    cfg = BootstrapConfig(B=3, seed=42, c=0.4, c0=0.4)
    ts = np.array([0.05, 0.4, 0.5, 0.6])
    plan = cfg.plan(5)
    h, h0 = plan.h, plan.h0

    base = fit_lse(s)
    assert_allclose(base.values, brute_isotonic(s.ys)[0], atol=1e-12)
    pilot = SlseFit(base, h0, h0)
    pilot_xs = slse_curve(pilot, xs)
    pilot_ts = slse_curve(pilot, ts)
    inner = (ts >= h0) & (ts <= 1 - h0)
    for t, v in zip(ts[inner], pilot_ts[inner]):
        assert abs(v - slse_quad(base.knots, base.values, h0, t)) < 1e-9
    rs = make_residuals(s, pilot_xs)

    rows = []
    for b in range(3):
        star = draw_bootstrap_sample(xs, rs, substream(42, b))
        bfit = fit_lse(star)
        assert_allclose(bfit.values, brute_isotonic(star.ys)[0], atol=1e-12)
        f_star = slse_curve(SlseFit(bfit, h, h0), ts)
        for t in ts[(ts >= h) & (ts <= 1 - h)]:
            assert abs(slse_at(SlseFit(bfit, h, h0), t) - slse_quad(bfit.knots, bfit.values, h, t)) < 1e-9
        rows.append(f_star - pilot_ts)
    assert_array_equal(bootstrap_diffs(s, cfg, ts), np.vstack(rows))


def test_trace_replay_nw_studentized():
    rng = np.random.default_rng(8)
    xs = np.sort(rng.uniform(0, 1, 40))
    s = RegressionSample(xs, xs + rng.normal(0, 0.1, 40))
    cfg = BootstrapConfig(B=4, seed=3, estimator="nw", studentized=True)
    ts = np.array([0.1, 0.5, 0.9])
    plan = cfg.plan(40)
    pilot_xs = np.array([nw_at(s, plan.h0, x) for x in xs])
    pilot_ts = np.array([nw_at(s, plan.h0, t) for t in ts])
    rs = make_residuals(s, pilot_xs)
    rows = []
    for b in range(4):
        star = draw_bootstrap_sample(xs, rs, substream(3, b))
        est = np.array([nw_at(star, plan.h, t) for t in ts])
        rows.append((est - pilot_ts) / sigma_hall_kay(star.ys))
    assert_allclose(bootstrap_diffs(s, cfg, ts), np.vstack(rows), rtol=1e-12, atol=1e-14)


def test_determinism_and_thread_independence(sample):
    ts = np.linspace(0.01, 0.99, 15)
    for est in ["slse", "nw"]:
        cfg = BootstrapConfig(B=40, seed=123, estimator=est, studentized=True)
        a = bootstrap_diffs(sample, cfg, ts)
        b = bootstrap_diffs(sample, cfg, ts)
        c = bootstrap_diffs(sample, BootstrapConfig(B=40, seed=123, estimator=est, studentized=True, workers=4), ts)
        assert_array_equal(a, b)
        assert_array_equal(a, c)
    d1 = bootstrap_diffs(sample, BootstrapConfig(B=2, seed=1), ts)
    d2 = bootstrap_diffs(sample, BootstrapConfig(B=2, seed=2), ts)
    assert not np.array_equal(d1, d2)


@pytest.mark.parametrize(
    "cfg",
    [
        BootstrapConfig(B=200, seed=5),
        BootstrapConfig(B=200, seed=5, studentized=True),
        BootstrapConfig(B=200, seed=5, estimator="nw"),
        BootstrapConfig(B=200, seed=5, estimator="nw", studentized=True),
        BootstrapConfig(B=200, seed=5, estimator="nw", studentized=True, sigma="residual"),
    ],
)
def test_band_matches_manual_composition(sample, cfg):
    ts = np.round(np.arange(1, 100) * 0.01, 2)
    band = confidence_band(sample, cfg, ts)
    assert np.all(band.lower <= band.upper)
    diffs = bootstrap_diffs(sample, cfg, ts)
    if cfg.studentized:
        if cfg.estimator == "nw" and cfg.sigma == "hall-kay":
            scale = sigma_hall_kay(sample.ys)
        else:
            plan = cfg.plan(sample.n)
            if cfg.estimator == "slse":
                pilot = slse_curve(SlseFit(fit_lse(sample), plan.h0, plan.h0), sample.xs)
            else:
                pilot = nw_at(sample, plan.h0, sample.xs)
            scale = sigma_residual(make_residuals(sample, pilot))
    else:
        scale = 1.0
    lo, hi = percentile_ci(diffs, band.estimate, cfg.alpha, scale)
    assert_array_equal(band.lower, lo)
    assert_array_equal(band.upper, hi)
    assert band.meta["seed"] == 5 and band.meta["B"] == 200


def test_config_validation():
    with pytest.raises(ValueError):
        BootstrapConfig(B=1)
    with pytest.raises(ValueError):
        BootstrapConfig(alpha=1.0)
    with pytest.raises(ValueError):
        BootstrapConfig(estimator="lse")
    with pytest.raises(ValueError):
        BootstrapConfig(seed=-1)


def test_bootstrap_reproduces_limit_bias_and_spread():
    # Rescaled bootstrap differences at t=0.5 pooled over a few samples.
    n = 2000
    spec = ScenarioSpec("quadratic", 0.1, n)
    cfg = BootstrapConfig(B=300, seed=17)
    pooled = []
    for m in range(4):
        s = gen_sample(spec, substream(17, 10_000 + m))
        pooled.append(bootstrap_diffs(s, cfg, [0.5], key=(m,))[:, 0])
    z = n**0.4 * np.concatenate(pooled)
    assert abs(z.mean() - THEORY_BIAS) < 0.04
    assert abs(z.std() / THEORY_SD - 1) < 0.3

"""Residual bootstrap confidence intervals for the SLSE and NW estimators.

Bootstrap responses are ``Y*_i = m(X_i) + E*_i`` where ``m`` is an
oversmoothed pilot fit (bandwidth ``h0`` of order ``n^(-1/9)``) and the
``E*_i`` are resampled from the centered residuals against that pilot. The
design points stay fixed. Because the pilot is oversmoothed, the bootstrap
differences ``f*_h(t) - m(t)`` carry the smoothing bias of ``f_h``, and the
bias drops out of the percentile interval.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .estimators import SlseFit, _nw_from_weights, nw_weights, slse_curve
from .isotonic import RegressionSample, StepFunction, _pava, fit_lse
from .kernel import BandwidthPlan
from .rng import substream

Estimator = Literal["slse", "nw"]
SigmaMethod = Literal["hall-kay", "residual"]

HALL_KAY_D = (
    0.25 * (math.sqrt(5.0) + 1.0),
    -0.5,
    -0.25 * (math.sqrt(5.0) - 1.0),
)


@dataclass(frozen=True)
class ResidualSet:
    residuals: NDArray[np.float64]
    pilot_values: NDArray[np.float64]


@dataclass(frozen=True)
class BootstrapConfig:
    """Settings for one bootstrap band.

    ``sigma`` only matters for Studentized NW intervals: ``"hall-kay"`` uses the
    difference-based variance estimate, ``"residual"`` the pilot residuals.
    ``workers`` changes speed only; results are identical for any value.
    """

    B: int = 1000
    seed: int = 0
    estimator: Estimator = "slse"
    studentized: bool = False
    alpha: float = 0.05
    c: float = 0.5
    c0: float = 0.7
    sigma: SigmaMethod = "hall-kay"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.B < 2:
            raise ValueError("B must be at least 2")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.estimator not in ("slse", "nw"):
            raise ValueError(f"unknown estimator {self.estimator!r}")
        if self.sigma not in ("hall-kay", "residual"):
            raise ValueError(f"unknown sigma method {self.sigma!r}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def plan(self, n: int) -> BandwidthPlan:
        return BandwidthPlan(self.c, self.c0, n)

    def meta(self, n: int) -> dict:
        plan = self.plan(n)
        d = asdict(self)
        del d["workers"]
        d.update(h=plan.h, h0=plan.h0, n=n)
        return d


@dataclass(frozen=True)
class ConfidenceBand:
    ts: NDArray[np.float64]
    estimate: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    meta: dict = field(default_factory=dict)


def make_residuals(sample: RegressionSample, pilot_curve_at_xs: ArrayLike) -> ResidualSet:
    pilot = np.asarray(pilot_curve_at_xs, dtype=float)
    if pilot.shape != sample.ys.shape:
        raise ValueError("pilot values must match the sample size")
    e = sample.ys - pilot
    e = e - math.fsum(e) / e.size
    return ResidualSet(e, pilot)


def draw_bootstrap_sample(
    xs: ArrayLike, rs: ResidualSet, stream: np.random.Generator, weights: ArrayLike | None = None
) -> RegressionSample:
    n = rs.residuals.size
    idx = stream.integers(0, n, size=n)
    return RegressionSample(np.asarray(xs, dtype=float), rs.pilot_values + rs.residuals[idx], weights)


def sigma_residual(rs: ResidualSet | ArrayLike) -> float:
    """Root mean square of the centered residuals."""
    e = rs.residuals if isinstance(rs, ResidualSet) else np.asarray(rs, dtype=float)
    if e.size == 0:
        raise ValueError("empty residual set")
    return math.sqrt(float(np.mean(e * e)))


def sigma_hall_kay(ys_in_x_order: ArrayLike) -> float:
    """Hall-Kay second-order difference estimate of the noise standard deviation."""
    y = np.asarray(ys_in_x_order, dtype=float)
    n = y.size
    if n < 3:
        raise ValueError("Hall-Kay estimator needs n >= 3")
    d0, d1, d2 = HALL_KAY_D
    r = d0 * y[:-2] + d1 * y[1:-1] + d2 * y[2:]
    return math.sqrt(float(r @ r) / (n - 2))


def _order_stat(sorted_col: NDArray[np.float64], q: float) -> NDArray[np.float64]:
    B = sorted_col.shape[0]
    # Guard against q*B landing a hair above an integer in floating point.
    k = min(max(math.ceil(q * B - 1e-9), 1), B)
    return sorted_col[k - 1]


def percentile_ci(diffs_column: ArrayLike, point_estimate, alpha: float, scale=1.0):
    """Basic bootstrap interval ``(est - Q_{1-a/2} s, est - Q_{a/2} s)``.

    ``Q_q`` is the order statistic of rank ``ceil(q B)``. Accepts a single
    column of B diffs or a ``(B, T)`` matrix with per-column estimates.
    """
    d = np.asarray(diffs_column, dtype=float)
    if d.shape[0] == 0:
        raise ValueError("empty bootstrap diffs")
    if np.any(np.asarray(scale) < 0):
        raise ValueError("scale must be nonnegative")
    s = np.sort(d, axis=0)
    lo_q = _order_stat(s, alpha / 2)
    hi_q = _order_stat(s, 1 - alpha / 2)
    est = np.asarray(point_estimate, dtype=float)
    lower = est - hi_q * scale
    upper = est - lo_q * scale
    if lower.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


class _Pipeline:
    """Everything about one bootstrap run that does not depend on ``b``."""

    def __init__(self, sample: RegressionSample, config: BootstrapConfig, ts: ArrayLike):
        self.sample = sample
        self.config = config
        self.ts = np.atleast_1d(np.asarray(ts, dtype=float))
        plan = config.plan(sample.n)
        self.h, self.h0 = plan.h, plan.h0
        if config.estimator == "slse":
            base = fit_lse(sample)
            pilot = SlseFit(base, self.h0, self.h0)
            pilot_xs = slse_curve(pilot, sample.xs)
            self.pilot_ts = slse_curve(pilot, self.ts)
            self.estimate = slse_curve(SlseFit(base, self.h, self.h0), self.ts)
        else:
            pilot_xs = _nw_from_weights(nw_weights(sample, self.h0, sample.xs), sample.ys)
            self.pilot_ts = _nw_from_weights(nw_weights(sample, self.h0, self.ts), sample.ys)
            # Design is fixed, so the weight matrix is shared by all replications.
            self.w = nw_weights(sample, self.h, self.ts)
            self.estimate = _nw_from_weights(self.w, sample.ys)
        self.residuals = make_residuals(sample, pilot_xs)

    def scale(self) -> float:
        cfg = self.config
        if cfg.estimator == "nw" and cfg.sigma == "hall-kay":
            return sigma_hall_kay(self.sample.ys)
        return sigma_residual(self.residuals)

    def replicate(self, stream: np.random.Generator) -> NDArray[np.float64]:
        rs = self.residuals
        n = rs.residuals.size
        e_star = rs.residuals[stream.integers(0, n, size=n)]
        y_star = rs.pilot_values + e_star
        if self.config.estimator == "slse":
            fitted = np.maximum.accumulate(_pava(y_star, self.sample.weights))
            fit = SlseFit(StepFunction(self.sample.xs, fitted), self.h, self.h0)
            est = slse_curve(fit, self.ts)
        else:
            est = _nw_from_weights(self.w, y_star)
        diff = est - self.pilot_ts
        if self.config.studentized:
            if self.config.estimator == "nw" and self.config.sigma == "hall-kay":
                s = sigma_hall_kay(y_star)
            else:
                s = sigma_residual(e_star - e_star.mean())
            if s == 0.0:
                raise ValueError("zero bootstrap scale; Studentization undefined")
            diff = diff / s
        return diff

    def run(self, key: tuple[int, ...] = ()) -> NDArray[np.float64]:
        seed = self.config.seed

        def one(b: int) -> NDArray[np.float64]:
            return self.replicate(substream(seed, *key, b))

        B = self.config.B
        if self.config.workers == 1:
            rows = [one(b) for b in range(B)]
        else:
            with ThreadPoolExecutor(self.config.workers) as ex:
                rows = list(ex.map(one, range(B)))
        return np.vstack(rows)


def bootstrap_diffs(
    sample: RegressionSample, config: BootstrapConfig, ts: ArrayLike, key: tuple[int, ...] = ()
) -> NDArray[np.float64]:
    """``(B, len(ts))`` matrix of bootstrap differences ``f*_h(t) - m(t)``.

    Row ``b`` is drawn from the substream ``(config.seed, *key, b)``. With
    ``config.studentized`` each row is divided by its replication's scale.
    """
    return _Pipeline(sample, config, ts).run(key)


def confidence_band(
    sample: RegressionSample, config: BootstrapConfig, ts: ArrayLike, key: tuple[int, ...] = ()
) -> ConfidenceBand:
    pipe = _Pipeline(sample, config, ts)
    diffs = pipe.run(key)
    scale = pipe.scale() if config.studentized else 1.0
    lower, upper = percentile_ci(diffs, pipe.estimate, config.alpha, scale)
    return ConfidenceBand(pipe.ts, pipe.estimate, lower, upper, config.meta(sample.n))

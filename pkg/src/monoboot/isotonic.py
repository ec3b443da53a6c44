"""Monotone least-squares regression (isotonic LSE) and its step-function form."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray


@dataclass(frozen=True)
class RegressionSample:
    """Design points ``xs`` in [0, 1], strictly increasing, with responses ``ys``.

    ``weights`` counts how many raw observations each point stands for; it is
    all ones unless tied design points were merged (see :meth:`from_pairs`).
    """

    xs: NDArray[np.float64]
    ys: NDArray[np.float64]
    weights: NDArray[np.float64] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if xs.size == 0:
            raise ValueError("empty input")
        if xs.size != ys.size:
            raise ValueError(f"length mismatch: {xs.size} xs vs {ys.size} ys")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        if xs[0] < 0.0 or xs[-1] > 1.0:
            raise ValueError("xs must lie in [0, 1]")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("non-finite values in sample")
        w = np.ones_like(xs) if self.weights is None else np.asarray(self.weights, dtype=float)
        if w.shape != xs.shape or np.any(w <= 0):
            raise ValueError("weights must be positive and match xs")
        for name, arr in (("xs", xs), ("ys", ys), ("weights", w)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return int(self.xs.size)

    @classmethod
    def from_pairs(cls, xs: ArrayLike, ys: ArrayLike) -> RegressionSample:
        """Sort by x and merge tied x values into one weighted point at the mean y.

        Merging keeps the least-squares objective unchanged up to a constant.
        """
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.size == 0:
            raise ValueError("empty input")
        if xs.shape != ys.shape:
            raise ValueError(f"length mismatch: {xs.size} xs vs {ys.size} ys")
        order = np.argsort(xs, kind="stable")
        xs, ys = xs[order], ys[order]
        ux, start, counts = np.unique(xs, return_index=True, return_counts=True)
        sums = np.add.reduceat(ys, start)
        return cls(ux, sums / counts, counts.astype(float))


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous nondecreasing step function, flat outside its knots."""

    knots: NDArray[np.float64]
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        knots = np.asarray(self.knots, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if knots.size == 0 or knots.shape != values.shape:
            raise ValueError("knots and values must be nonempty and of equal length")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        if np.any(np.diff(values) < 0):
            raise ValueError("values must be nondecreasing")
        knots.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    def __call__(self, x: ArrayLike) -> NDArray[np.float64] | float:
        return eval_step(self, x)

    @property
    def first(self) -> float:
        return float(self.values[0])


def _pava(ys: NDArray[np.float64], w: NDArray[np.float64]) -> NDArray[np.float64]:
    # Block stack of (weighted sum, total weight, length, mean). Only strict
    # violators are pooled, so already-monotone runs are returned untouched.
    sums: list[float] = []
    weights: list[float] = []
    sizes: list[int] = []
    means: list[float] = []
    for y, wi in zip(ys.tolist(), w.tolist()):
        s, wt, sz, m = y * wi, wi, 1, y
        while means and means[-1] > m:
            means.pop()
            s += sums.pop()
            wt += weights.pop()
            sz += sizes.pop()
            m = s / wt
        sums.append(s)
        weights.append(wt)
        sizes.append(sz)
        means.append(m)
    return np.repeat(np.array(means), sizes)


def fit_lse(sample: RegressionSample) -> StepFunction:
    """Isotonic least-squares fit by weighted pool-adjacent-violators.

    The fitted value at ``X_i`` is the left slope at ``i`` of the greatest
    convex minorant of the cumulative-sum diagram; equivalently each maximal
    constant block is the (weighted) mean of its ys.
    """
    if sample.n == 0:
        raise ValueError("empty input")
    fitted = _pava(sample.ys, sample.weights)
    # Pooling only creates ties; enforce exact monotonicity against rounding.
    fitted = np.maximum.accumulate(fitted)
    return StepFunction(sample.xs, fitted)


def eval_step(f: StepFunction, x: ArrayLike) -> NDArray[np.float64] | float:
    idx = np.searchsorted(f.knots, x, side="right") - 1
    out = f.values[np.clip(idx, 0, f.values.size - 1)]
    return float(out) if np.ndim(out) == 0 else out


def jumps(f: StepFunction) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Jump locations ``tau`` and strictly positive jump sizes ``p``."""
    d = np.diff(f.values)
    pos = np.flatnonzero(d > 0)
    return f.knots[pos + 1], d[pos]

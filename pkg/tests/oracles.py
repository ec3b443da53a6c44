"""Independent reference computations used only by the tests."""

import itertools
from fractions import Fraction

import numpy as np
from scipy.integrate import quad


def brute_isotonic(ys, w=None):
    """Best monotone block-mean fit over all consecutive-block partitions.

    Exact rational arithmetic, so near-ties in SSE are resolved correctly.
    """
    ys = [Fraction(float(y)) for y in ys]
    w = [Fraction(1)] * len(ys) if w is None else [Fraction(float(v)) for v in w]
    n = len(ys)
    best, best_sse = None, None
    for cuts in itertools.product((False, True), repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        levels = [
            sum(y * v for y, v in zip(ys[a:b], w[a:b])) / sum(w[a:b])
            for a, b in zip(bounds[:-1], bounds[1:])
        ]
        if any(l2 < l1 for l1, l2 in zip(levels, levels[1:])):
            continue
        fit = [lv for lv, a, b in zip(levels, bounds[:-1], bounds[1:]) for _ in range(b - a)]
        sse = sum(v * (y - f) ** 2 for y, v, f in zip(ys, w, fit))
        if best_sse is None or sse < best_sse:
            best, best_sse = fit, sse
    return np.array([float(f) for f in best]), float(best_sse)


def K(u):
    return 35 / 32 * (1 - u * u) ** 3 if abs(u) <= 1 else 0.0


def slse_quad(knots, values, h, t):
    """``int K_h(t - x) f(x) dx`` with f the right-continuous step function."""
    knots = np.asarray(knots)
    values = np.asarray(values)

    def f(x):
        i = np.searchsorted(knots, x, side="right") - 1
        return values[min(max(i, 0), len(values) - 1)]

    breaks = [k for k in knots if t - h < k < t + h]
    val, _ = quad(lambda x: K((t - x) / h) / h * f(x), t - h, t + h,
                  points=breaks or None, epsabs=1e-12, epsrel=1e-12, limit=500)
    return val


def random_step(rng, n_jumps, lo=0.0, hi=1.0):
    knots = np.sort(rng.uniform(lo, hi, size=n_jumps + 1))
    values = np.concatenate([[rng.normal()], rng.exponential(size=n_jumps)]).cumsum()
    return knots, values

"""Smoothed isotonic estimator (SLSE) and Nadaraya-Watson estimator.

The SLSE convolves the isotonic step fit with the scaled triweight kernel.
On ``[h, 1-h]`` it is evaluated as ``f(0) + sum_i IK_h(t - tau_i) p_i`` over
the jumps of the step fit; near the edges it is continued by a quadratic
Taylor expansion whose curvature comes from a pilot bandwidth ``h0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .isotonic import RegressionSample, StepFunction, jumps
from .kernel import check_bandwidth, ik, kh, kh_prime, partial_moments, triweight


@dataclass(frozen=True)
class SlseFit:
    base: StepFunction
    h: float
    h0: float
    taus: NDArray[np.float64] = field(init=False, repr=False)
    ps: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", check_bandwidth(self.h, "h"))
        object.__setattr__(self, "h0", check_bandwidth(self.h0, "h0"))
        taus, ps = jumps(self.base)
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "ps", ps)


def _scalar_or(arr: NDArray[np.float64], like: ArrayLike) -> NDArray[np.float64] | float:
    return float(arr[0]) if np.ndim(like) == 0 else arr


def _interior_check(t: NDArray[np.float64], h: float, msg: str) -> None:
    if np.any((t < h) | (t > 1.0 - h)):
        raise ValueError(msg)


def _sum_form(base_level: float, taus, ps, h: float, t: NDArray[np.float64]) -> NDArray[np.float64]:
    if taus.size == 0:
        return np.full(t.shape, base_level)
    return base_level + ik((t[:, None] - taus[None, :]) / h) @ ps


def _deriv_sum(taus, ps, h: float, t: NDArray[np.float64]) -> NDArray[np.float64]:
    if taus.size == 0:
        return np.zeros(t.shape)
    return kh(t[:, None] - taus[None, :], h) @ ps


def _curv_sum(taus, ps, h0: float, t: NDArray[np.float64]) -> NDArray[np.float64]:
    if taus.size == 0:
        return np.zeros(t.shape)
    return kh_prime(t[:, None] - taus[None, :], h0) @ ps


def slse_at(fit: SlseFit, t: ArrayLike) -> NDArray[np.float64] | float:
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    _interior_check(tt, fit.h, "t outside [h, 1-h]: use slse_boundary")
    return _scalar_or(_sum_form(fit.base.first, fit.taus, fit.ps, fit.h, tt), t)


def slse_deriv_at(fit: SlseFit, t: ArrayLike) -> NDArray[np.float64] | float:
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    _interior_check(tt, fit.h, "t outside [h, 1-h]: use slse_boundary")
    return _scalar_or(_deriv_sum(fit.taus, fit.ps, fit.h, tt), t)


def slse_second_deriv_at(base: StepFunction, h0: float, t: ArrayLike) -> NDArray[np.float64] | float:
    """Curvature estimate ``sum_i K'_{h0}(t - tau_i) p_i``."""
    h0 = check_bandwidth(h0, "h0")
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    _interior_check(tt, h0, "t outside [h0, 1-h0]")
    taus, ps = jumps(base)
    return _scalar_or(_curv_sum(taus, ps, h0, tt), t)


def _edge_terms(fit: SlseFit) -> tuple[tuple[float, float, float], tuple[float, float, float]]:
    h, h0 = fit.h, fit.h0
    anchors = np.array([h, 1.0 - h])
    val = _sum_form(fit.base.first, fit.taus, fit.ps, h, anchors)
    der = _deriv_sum(fit.taus, fit.ps, h, anchors)
    curv = _curv_sum(fit.taus, fit.ps, h0, np.array([h0, 1.0 - h0]))
    return (val[0], der[0], curv[0]), (val[1], der[1], curv[1])


def _taylor(t: NDArray[np.float64], fit: SlseFit, edges) -> NDArray[np.float64]:
    (lv, ld, lc), (rv, rd, rc) = edges
    out = np.empty_like(t)
    left = t < fit.h
    d = t[left] - fit.h
    out[left] = lv + d * ld + 0.5 * d * d * lc
    d = t[~left] - (1.0 - fit.h)
    out[~left] = rv + d * rd + 0.5 * d * d * rc
    return out


def slse_boundary(fit: SlseFit, t: ArrayLike) -> NDArray[np.float64] | float:
    """Quadratic continuation of the SLSE on ``[0, h)`` and ``(1-h, 1]``.

    The right edge is anchored at ``1-h`` (value and slope) and uses the
    curvature at ``1-h0``; the left edge mirrors this at ``h`` and ``h0``.
    """
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((tt >= fit.h) & (tt <= 1.0 - fit.h)):
        raise ValueError("t inside [h, 1-h]: use slse_at")
    if np.any((tt < 0.0) | (tt > 1.0)):
        raise ValueError("t outside [0, 1]")
    return _scalar_or(_taylor(tt, fit, _edge_terms(fit)), t)


def slse_curve(fit: SlseFit, grid: ArrayLike) -> NDArray[np.float64]:
    """SLSE on an arbitrary grid in [0, 1], boundary-corrected near the edges."""
    t = np.atleast_1d(np.asarray(grid, dtype=float))
    if np.any((t < 0.0) | (t > 1.0)):
        raise ValueError("grid points must lie in [0, 1]")
    inner = (t >= fit.h) & (t <= 1.0 - fit.h)
    out = np.empty_like(t)
    out[inner] = _sum_form(fit.base.first, fit.taus, fit.ps, fit.h, t[inner])
    if not inner.all():
        out[~inner] = _taylor(t[~inner], fit, _edge_terms(fit))
    return out


# --- Nadaraya-Watson ---------------------------------------------------------


def _boundary_weights(u: NDArray[np.float64], rho: NDArray[np.float64]) -> NDArray[np.float64]:
    # Row-wise boundary kernel: u is (T, n), rho is (T,).
    a0, a1, a2 = partial_moments(rho)
    det = a0 * a2 - a1 * a1
    assert np.all(det > 0.0), "degenerate boundary moment matrix"
    w = (a2[:, None] - a1[:, None] * u) * triweight(u) / det[:, None]
    return np.where(u <= rho[:, None], w, 0.0)


def nw_weights(sample: RegressionSample, h: float, t: ArrayLike) -> NDArray[np.float64]:
    """Unnormalized NW kernel weights, shape ``(len(t), n)``.

    Interior points use the triweight kernel. Within ``h`` of an edge the
    boundary kernel with ``rho = t/h`` (reflected at the right edge) is used.
    """
    h = check_bandwidth(h)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t < 0.0) | (t > 1.0)):
        raise ValueError("t outside [0, 1]")
    x = sample.xs[None, :]
    u = (t[:, None] - x) / h
    in_window = np.abs(u) < 1.0
    if not np.all(in_window.any(axis=1)):
        raise ValueError("no data in window")
    w = np.asarray(triweight(u))
    left = t < h
    right = t > 1.0 - h
    if left.any():
        w[left] = _boundary_weights(u[left], t[left] / h)
    if right.any():
        w[right] = _boundary_weights(-u[right], (1.0 - t[right]) / h)
    return w * sample.weights[None, :]


def _nw_from_weights(w: NDArray[np.float64], ys: NDArray[np.float64]) -> NDArray[np.float64]:
    den = w.sum(axis=1)
    if np.any(den == 0.0):
        raise ValueError("no data in window")
    return (w @ ys) / den


def nw_at(sample: RegressionSample, h: float, t: ArrayLike) -> NDArray[np.float64] | float:
    w = nw_weights(sample, h, t)
    return _scalar_or(_nw_from_weights(w, sample.ys), t)


def nw_beta_sq(sample: RegressionSample, h: float, t: ArrayLike) -> NDArray[np.float64] | float:
    """Variance factor ``sum K_h(t-X_i)^2 / (sum K_h(t-X_i))^2`` of the NW estimate."""
    w = nw_weights(sample, h, t)
    den = w.sum(axis=1)
    if np.any(den == 0.0):
        raise ValueError("no data in window")
    # Merged ties: a point of weight w has variance sigma^2 / w.
    num = (w * w / sample.weights[None, :]).sum(axis=1)
    return _scalar_or(num / den**2, t)

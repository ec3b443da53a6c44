"""Triweight kernel, its derivative and integral, and the NW boundary kernel.

All functions are vectorized over their first argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

#: Second moment and roughness of the triweight kernel.
MU2 = 1.0 / 9.0
ROUGHNESS = 350.0 / 429.0

_C = 35.0 / 32.0


def _out(v: NDArray[np.float64]) -> NDArray[np.float64] | float:
    return float(v) if v.ndim == 0 else v


def check_bandwidth(h: float, name: str = "h") -> float:
    h = float(h)
    if not 0.0 < h < 0.5:
        raise ValueError(f"bandwidth {name}={h!r} must lie in (0, 0.5)")
    return h


@dataclass(frozen=True)
class BandwidthPlan:
    """Bandwidth constants: ``h = c n^(-1/5)`` and pilot ``h0 = c0 n^(-1/9)``.

    The pilot must shrink strictly slower than ``n^(-1/5)``; with a pilot of
    the same order as ``h`` its curvature estimate is inconsistent and the
    bootstrap no longer reproduces the smoothing bias.
    """

    c: float
    c0: float
    n: int
    pilot_exponent: float = -1.0 / 9.0

    def __post_init__(self) -> None:
        if self.c <= 0 or self.c0 <= 0:
            raise ValueError("bandwidth constants must be positive")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not -0.2 < self.pilot_exponent < 0.0:
            raise ValueError(
                f"pilot exponent {self.pilot_exponent!r} must lie in (-1/5, 0); "
                "an n^(-1/5) pilot does not estimate the curvature consistently"
            )
        check_bandwidth(self.h, "h")
        check_bandwidth(self.h0, "h0")

    @property
    def h(self) -> float:
        return self.c * self.n ** (-0.2)

    @property
    def h0(self) -> float:
        return self.c0 * self.n**self.pilot_exponent


def triweight(u: ArrayLike) -> NDArray[np.float64] | float:
    u = np.asarray(u, dtype=float)
    v = np.clip(1.0 - u * u, 0.0, None)
    return _out(_C * v**3)


def triweight_prime(u: ArrayLike) -> NDArray[np.float64] | float:
    u = np.asarray(u, dtype=float)
    v = np.clip(1.0 - u * u, 0.0, None)
    return _out(-(105.0 / 16.0) * u * v**2)


def ik(y: ArrayLike) -> NDArray[np.float64] | float:
    """Integrated triweight kernel, ``int_{-inf}^y K(u) du``."""
    y = np.clip(np.asarray(y, dtype=float), -1.0, 1.0)
    y2 = y * y
    return _out(0.5 + _C * y * (1.0 - y2 + 0.6 * y2 * y2 - y2 * y2 * y2 / 7.0))


def kh(y: ArrayLike, h: float) -> NDArray[np.float64] | float:
    return _out(np.asarray(triweight(np.asarray(y, dtype=float) / h)) / h)


def kh_prime(y: ArrayLike, h: float) -> NDArray[np.float64] | float:
    """Exact derivative of :func:`kh` in ``y``."""
    return _out(np.asarray(triweight_prime(np.asarray(y, dtype=float) / h)) / (h * h))


def ikh(y: ArrayLike, h: float) -> NDArray[np.float64] | float:
    return ik(np.asarray(y, dtype=float) / h)


def partial_moments(rho: ArrayLike) -> tuple[NDArray[np.float64], ...]:
    """``a_j(rho) = int_{-1}^{rho} u^j K(u) du`` for j = 0, 1, 2 (closed form)."""
    r = np.clip(np.asarray(rho, dtype=float), -1.0, 1.0)
    r2 = r * r
    a0 = np.asarray(ik(r))
    a1 = _C * (r2 / 2 - 3 * r2**2 / 4 + r2**3 / 2 - r2**4 / 8 - 1.0 / 8)
    a2 = _C * (r**3 / 3 - 3 * r**5 / 5 + 3 * r**7 / 7 - r**9 / 9 + 16.0 / 315)
    return a0, a1, a2


def boundary_nw_kernel(u: ArrayLike, rho: float) -> NDArray[np.float64] | float:
    """Left-boundary kernel on ``[-1, rho]``: a combination of K(u) and uK(u).

    Normalized so that ``int B = 1`` and ``int u B = 0`` over ``[-1, rho]``.
    Zero for ``u > rho``.
    """
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho={rho!r} must lie in [0, 1]")
    a0, a1, a2 = (float(a) for a in partial_moments(rho))
    det = a0 * a2 - a1 * a1
    assert det > 0.0, "degenerate boundary moment matrix"
    u = np.asarray(u, dtype=float)
    out = (a2 - a1 * u) * np.asarray(triweight(u)) / det
    return _out(np.where(u <= rho, out, 0.0))

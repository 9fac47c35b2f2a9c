"""Least-squares power-law fits in log2-log2 coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import BesovError

__all__ = ["ScalingFit", "fit_scaling_exponent"]


@dataclass
class ScalingFit:
    exponent: float
    r2: float
    intercept: float
    points: list = field(default_factory=list)

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "r2": self.r2,
            "intercept": self.intercept,
            "points": [[float(a), float(b)] for a, b in self.points],
        }


def fit_scaling_exponent(points):
    """Fit ``value ~ 2^intercept * size^exponent`` to ``(size, value)`` pairs.

    Needs at least 4 points with positive sizes and values.  ``r2`` is 1 when
    the data are an exact power law, including the constant case.
    """
    pts = [(float(a), float(b)) for a, b in points]
    if len(pts) < 4:
        raise BesovError(f"scaling fit needs >= 4 points, got {len(pts)}")
    x = np.log2([a for a, _ in pts])
    y = np.array([b for _, b in pts])
    if np.any(~np.isfinite(x)) or np.any(y <= 0) or np.any(~np.isfinite(y)):
        raise BesovError("scaling fit needs positive finite sizes and values")
    y = np.log2(y)
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + icpt)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    scale = max(1.0, float(np.abs(y).max())) ** 2
    if ss_tot <= 1e-24 * scale * len(y):
        r2 = 1.0 if ss_res <= 1e-24 * scale * len(y) else 0.0
    else:
        r2 = max(0.0, 1.0 - ss_res / ss_tot)
    return ScalingFit(float(slope), float(r2), float(icpt), pts)

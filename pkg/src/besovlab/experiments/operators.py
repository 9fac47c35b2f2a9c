"""Ratio experiments: multiplier operator-norm estimates, algebra ratios, cross-characterization tables."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..grid import product
from ..localization import norm_of

__all__ = [
    "CHARACTERIZATIONS",
    "MultiplierEstimate",
    "multiplier_norm_estimate",
    "algebra_ratio_suite",
    "EquivalenceTable",
    "equivalence_suite",
    "spread",
]

CHARACTERIZATIONS = ("fourier", "difference", "wavelet")


def spread(values):
    """``max / min`` of positive values (1 for a single value)."""
    v = np.asarray(values, dtype=np.float64)
    return float(v.max() / v.min())


@dataclass
class MultiplierEstimate:
    value: float
    witness: int
    ratios: list


def multiplier_norm_estimate(f, params, family, characterization="difference", norms=None):
    """``max_g ||f g|| / ||g||`` over ``family``: a lower bound on the multiplier operator norm.

    ``norms`` may carry precomputed ``||g||`` values aligned with ``family``.
    Members with zero norm are skipped.
    """
    if not family:
        raise ValueError("multiplier_norm_estimate needs a nonempty family")
    ratios = []
    for i, g in enumerate(family):
        ng = norm_of(g, params, characterization) if norms is None else norms[i]
        if ng == 0:
            ratios.append(math.nan)
            continue
        ratios.append(norm_of(product(f, g), params, characterization) / ng)
    finite = [r if np.isfinite(r) else -math.inf for r in ratios]
    i = int(np.argmax(finite))
    return MultiplierEstimate(float(max(0.0, finite[i])), i, ratios)


def algebra_ratio_suite(params, pairs, characterization="difference"):
    """Max of ``||f g|| / (||f|| ||g||)`` over ``pairs`` with the witnessing index."""
    params.require_algebra(pairs[0][0].grid.d)
    ratios = []
    for f, g in pairs:
        nf = norm_of(f, params, characterization)
        ng = norm_of(g, params, characterization)
        if nf == 0 or ng == 0:
            ratios.append(math.nan)
            continue
        ratios.append(norm_of(product(f, g), params, characterization) / (nf * ng))
    arr = np.where(np.isfinite(ratios), ratios, -np.inf)
    i = int(np.argmax(arr))
    return {"max_ratio": float(arr[i]), "witness": i, "ratios": ratios}


@dataclass
class EquivalenceTable:
    params: object
    labels: list
    norms: dict
    ratios: dict = field(default_factory=dict)
    excluded: list = field(default_factory=list)

    def interval(self, a, b):
        r = self.ratios[(a, b)]
        return float(np.min(r)), float(np.max(r))

    def constant(self, a, b):
        """Smallest ``C`` with every ``a/b`` ratio in ``[1/C, C]``."""
        lo, hi = self.interval(a, b)
        return max(hi, 1.0 / lo)


def equivalence_suite(params, family, characterizations=CHARACTERIZATIONS, ws=None):
    """Norms of every member in each characterization plus pairwise ratio ranges.

    ``family`` is a list of ``(label, SampledFunction)``; identically zero
    members are excluded with a warning.
    """
    labels, norms, excluded = [], {c: [] for c in characterizations}, []
    for label, f in family:
        if f.is_zero():
            warnings.warn(f"equivalence_suite: excluding zero function {label!r} (0/0)")
            excluded.append(label)
            continue
        labels.append(label)
        for c in characterizations:
            norms[c].append(norm_of(f, params, c, ws))
    table = EquivalenceTable(params, labels, {c: np.array(v) for c, v in norms.items()}, excluded=excluded)
    for a, b in itertools.combinations(characterizations, 2):
        if labels:
            table.ratios[(a, b)] = table.norms[a] / table.norms[b]
    return table

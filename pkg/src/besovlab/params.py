"""Parameter triples and the norm result record shared by every characterization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["SmoothnessParams", "NormBreakdown", "lq_sum", "fmt_exponent", "parse_exponent"]


def parse_exponent(value):
    """Accept numbers or the strings ``inf``/``infinity``."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(value)


def fmt_exponent(value):
    """JSON-safe rendering: ``inf`` becomes the string ``"inf"``."""
    return "inf" if math.isinf(value) else value


def lq_sum(values, q):
    """``(sum |t|^q)^(1/q)``, or the max for ``q = inf``; empty input gives 0."""
    a = np.abs(np.asarray(values, dtype=np.float64))
    if a.size == 0:
        return 0.0
    if math.isinf(q):
        return float(a.max())
    top = a.max()
    if top == 0.0:
        return 0.0
    # scaled to avoid overflow for large q or large terms
    return float(top * np.sum((a / top) ** q) ** (1.0 / q))


@dataclass(frozen=True)
class SmoothnessParams:
    """The triple ``(s, p, q)`` plus the difference order ``m``.

    ``m`` defaults to ``floor(s) + 1``.
    """

    s: float
    p: float
    q: float
    m: int = None

    def __post_init__(self):
        p = parse_exponent(self.p)
        q = parse_exponent(self.q)
        if not p > 0:
            raise ParameterError(f"p must lie in (0, inf], got {p}", "requires 0 < p <= inf")
        if not q > 0:
            raise ParameterError(f"q must lie in (0, inf], got {q}", "requires 0 < q <= inf")
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        m = math.floor(self.s) + 1 if self.m is None else int(self.m)
        if m < 1:
            raise ParameterError(f"difference order m must be >= 1, got {m}", "requires m >= 1")
        object.__setattr__(self, "m", m)

    @property
    def inv_p(self):
        return 0.0 if math.isinf(self.p) else 1.0 / self.p

    def difference_threshold(self, d):
        return d * max(0.0, self.inv_p - 1.0)

    def require_difference(self, d):
        """Hypotheses of the difference characterization: ``s > d max(0, 1/p - 1)`` and ``m > s``."""
        lo = self.difference_threshold(d)
        if not self.s > lo:
            raise ParameterError(
                f"difference characterization requires s > d*max(0,1/p-1) = {lo:g}, got s={self.s:g}",
                "requires s > d*max(0,1/p-1)",
            )
        if not self.m > self.s:
            raise ParameterError(
                f"difference characterization requires m > s, got m={self.m}, s={self.s:g}",
                "requires m > s",
            )
        return self

    def require_multiplier_order(self):
        """``s < m <= s + 1`` as in the multiplier-space definition."""
        if not (self.s > 0 and self.s < self.m <= self.s + 1):
            raise ParameterError(
                f"multiplier functional requires s > 0 and s < m <= s+1, got s={self.s:g}, m={self.m}",
                "requires s < m <= s+1",
            )
        return self

    def require_algebra(self, d):
        """``s > d/p``, or ``s = d/p`` with ``q <= 1`` and ``p < inf``."""
        crit = d * self.inv_p
        if self.s > crit:
            return self
        if math.isclose(self.s, crit) and self.q <= 1 and not math.isinf(self.p):
            return self
        raise ParameterError(
            f"multiplication algebra requires s > d/p (or s = d/p, q <= 1, p < inf); "
            f"got s={self.s:g}, d/p={crit:g}",
            "requires s > d/p",
        )

    def with_(self, **kw):
        data = dict(s=self.s, p=self.p, q=self.q, m=self.m)
        data.update(kw)
        if "s" in kw and "m" not in kw:
            data["m"] = None
        return SmoothnessParams(**data)

    def as_dict(self):
        return {"s": self.s, "p": fmt_exponent(self.p), "q": fmt_exponent(self.q), "m": self.m}


@dataclass
class NormBreakdown:
    """A norm value with its per-scale terms.

    ``terms[k]`` is the weighted contribution at scale ``k`` (``2^{ks}||f_k||_p``
    for bands, ``2^{ks} omega_m(f, 2^-k)_p`` for differences, the level-``j``
    block for wavelets).  ``lp_term`` is the separate low-frequency part
    where the characterization has one.
    """

    characterization: str
    params: SmoothnessParams
    total: float
    terms: list
    lp_term: float = None
    metadata: dict = field(default_factory=dict)

    def lq_combined(self):
        """``(lp_term^q + sum terms^q)^(1/q)``: the same data aggregated in one ``l_q`` sum."""
        head = [] if self.lp_term is None else [self.lp_term]
        return lq_sum(head + list(self.terms), self.params.q)

    def to_dict(self):
        out = {
            "characterization": self.characterization,
            "s": self.params.s,
            "p": fmt_exponent(self.params.p),
            "q": fmt_exponent(self.params.q),
            "m": self.params.m,
            "total": self.total,
            "terms": [float(t) for t in self.terms],
        }
        if self.lp_term is not None:
            out["lp_term"] = self.lp_term
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

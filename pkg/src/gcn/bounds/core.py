"""Shared quantities for the bounds: theta, beta, f(t), g(t) and the report type."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from ..network import NetworkParams
from ..qcomb import GAMMA, LOG2_GAMMA, log2_int

LOG2_E = math.log2(math.e)


def theta(p: NetworkParams) -> int:
    return p.alpha - (p.h - p.eps) // p.ell + 1


def log2_beta(alpha: int) -> float:
    """``log2 of ((alpha-1)! / (2 e gamma alpha))^(1/(alpha-1))``."""
    log2_fact = math.lgamma(alpha) / math.log(2)
    return (log2_fact - 1 - LOG2_E - LOG2_GAMMA - math.log2(alpha)) / (alpha - 1)


def beta(alpha: int) -> float:
    return 2.0 ** log2_beta(alpha)


def f_poly(p: NetworkParams, t: int) -> int:
    a, ell, eps, h = p.alpha, p.ell, p.eps, p.h
    return (a * ell + eps - h) * eps * t * t + (a * ell + 2 * eps - h) * t + 1


def g_poly(p: NetworkParams, t: int) -> int:
    k, m = p.ell * t, (p.h - p.ell) * t
    return max(k, m) * (min(k, m) - (p.h - p.ell - p.eps) * t + 1)


def high_regime(p: NetworkParams) -> bool:
    """True when ``h >= 2*ell + eps`` (the subspace / local-lemma side of the bounds)."""
    return p.h >= 2 * p.ell + p.eps


def log2_sum(log2_a: float, b: float) -> float:
    """``log2(2^log2_a + b)`` for ``b >= 0`` without overflow."""
    if b <= 0:
        return log2_a
    if log2_a > 1000:
        return log2_a + math.log1p(b * 2.0 ** (-log2_a)) / math.log(2)
    return math.log2(2.0**log2_a + b)


@dataclass
class BoundReport:
    """One evaluated bound on the largest admissible number of middle nodes.

    ``value_log2`` is the bound itself (exact when ``value_exact`` is set);
    ``approx_log2`` is the closed gamma-form when the bound has one.
    """

    source: str
    kind: str  # "upper" or "lower"
    value_log2: float
    value_exact: int | None = None
    approx_log2: float | None = None
    valid: bool = True
    notes: str = ""
    details: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_exact(cls, source: str, kind: str, value: int, **kw) -> "BoundReport":
        value_log2 = log2_int(value) if value > 0 else -math.inf
        return cls(source, kind, value_log2, value, **kw)

    def as_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "kind": self.kind,
            "value_log2": self.value_log2,
            "value_exact": self.value_exact,
            "approx_log2": self.approx_log2,
            "valid": self.valid,
            "notes": self.notes,
            "details": self.details,
        }


__all__ = [
    "GAMMA",
    "LOG2_E",
    "LOG2_GAMMA",
    "BoundReport",
    "beta",
    "f_poly",
    "g_poly",
    "high_regime",
    "log2_beta",
    "log2_sum",
    "theta",
]

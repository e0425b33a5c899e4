"""Which upper bound is smaller, sufficient conditions for the ordering, and the best-bound table."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..network import NetworkParams
from ..qcomb import gaussian_binomial as gb
from .core import BoundReport, high_regime, theta
from .rmax import (
    rmax_lower_lll,
    rmax_lower_mrd,
    rmax_lower_recursive,
    rmax_upper_alpha2,
    rmax_upper_ez,
    rmax_upper_subspace,
)


def _u_a(p: NetworkParams, q: int, t: int) -> int:
    th = theta(p)
    return gb((p.eps + p.ell) * t, p.eps * t, q) * (th * (q ** (p.ell * t + 1) - 1) // (q - 1) - 1) + p.alpha - th


def _u_b(p: NetworkParams, q: int, t: int) -> Fraction | None:
    n, k, e = p.h * t, p.ell * t, p.eps * t
    if n - k - e - 1 < 0:
        return None
    return Fraction((p.alpha - 1) * gb(n, n - e - 1, q), gb(n - k, n - k - e - 1, q))


def _ez_alpha_cap(p: NetworkParams, q: int, t: int) -> int:
    return gb(p.h * t - p.eps * t - 1, p.ell * t, q) + 1


def alpha2_exponents(p: NetworkParams, t: int) -> tuple[int, int]:
    """Exponents of ``q`` in the gamma-forms of the alpha = 2 bound and of the double-counting bound."""
    h, ell, eps = p.h, p.ell, p.eps
    return (h - ell) * (2 * ell + eps - h) * t * t + (h - ell) * t, ell * t * (eps * t + 1)


def alpha2_lemma_holds(p: NetworkParams, t: int) -> bool:
    """Hypothesis under which the alpha = 2 bound has the smaller exponent."""
    h, ell, eps = p.h, p.ell, p.eps
    a, b = eps * t + 1, ell * t
    # h < ell + eps + 1/t  <=>  h*t < (ell + eps)*t + 1, kept in integers
    below = h * t < (ell + eps) * t + 1
    above = h * t > (ell + eps) * t + 1
    if a < b:
        return h > 2 * ell or below
    if a > b:
        return above or h < 2 * ell
    return h != 2 * ell


@dataclass
class CompareReport:
    winner: str | None
    values: dict[str, Any]
    predicates: dict[str, bool]
    consistent: bool
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {
            "winner": self.winner,
            "values": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.values.items()},
            "predicates": self.predicates,
            "consistent": self.consistent,
            "notes": self.notes,
        }


def compare_upper_bounds(p: NetworkParams, q: int, t: int) -> CompareReport:
    """Evaluate the exact upper bounds and the three sufficient conditions for their ordering.

    ``consistent`` is False if some condition holds while the ordering it
    promises fails on the exact values (or on the exponents, for alpha = 2).
    """
    reports = {r.source: r for r in (rmax_upper_subspace(p, q, t), rmax_upper_ez(p, q, t), rmax_upper_alpha2(p, q, t))}
    valid = {k: r for k, r in reports.items() if r.valid}
    winner = min(valid, key=lambda k: valid[k].value_log2) if valid else None
    values: dict[str, Any] = {k: r.value_exact for k, r in reports.items()}
    notes: list[str] = []
    ok = True

    high = high_regime(p)
    th = theta(p)
    in_cap = high and th >= 1 and 2 <= p.alpha <= _ez_alpha_cap(p, q, t)
    g_small = gb((p.eps + p.ell) * t, p.eps * t, q)
    ua = _u_a(p, q, t) if th >= 1 else None
    ub = _u_b(p, q, t)
    values["U_A"], values["U_B"] = ua, ub

    pred2 = bool(
        in_cap and g_small <= p.alpha
        and Fraction(2 * th * p.alpha, p.alpha - 1) <= q ** (p.ell * p.eps * t * t)
    )
    pred1 = bool(in_cap and g_small >= p.alpha and p.h >= 2 * p.eps and 8 * th < p.alpha - 1)
    for name, holds in (("compare2", pred2), ("compare", pred1)):
        if holds and not (ua is not None and ub is not None and ua < ub):
            ok = False
            notes.append(f"{name}: hypothesis holds but U_A={ua} is not below U_B={ub}")

    pred_a2 = p.alpha == 2 and alpha2_lemma_holds(p, t)
    c_exp, d_exp = alpha2_exponents(p, t)
    values["exponent_alpha2"], values["exponent_ez"] = c_exp, d_exp
    if pred_a2 and not c_exp < d_exp:
        ok = False
        notes.append(f"compareAlpha2: hypothesis holds but exponent {c_exp} is not below {d_exp}")

    return CompareReport(winner, values, {"compare2": pred2, "compare": pred1, "compareAlpha2": pred_a2}, ok, notes)


@dataclass
class BestBounds:
    lower: BoundReport
    upper: BoundReport
    reports: list[BoundReport]

    @property
    def tightest_lower(self) -> BoundReport | None:
        cands = [r for r in self.reports if r.kind == "lower" and r.valid]
        return max(cands, key=lambda r: r.value_log2) if cands else None

    @property
    def tightest_upper(self) -> BoundReport | None:
        cands = [r for r in self.reports if r.kind == "upper" and r.valid]
        return min(cands, key=lambda r: r.value_log2) if cands else None

    def as_dict(self) -> dict[str, Any]:
        tl, tu = self.tightest_lower, self.tightest_upper
        return {
            "lower": self.lower.as_dict(),
            "upper": self.upper.as_dict(),
            "tightest_lower": None if tl is None else tl.source,
            "tightest_upper": None if tu is None else tu.source,
            "reports": [r.as_dict() for r in self.reports],
        }


def all_bounds(p: NetworkParams, q: int, t: int) -> list[BoundReport]:
    return [
        rmax_upper_subspace(p, q, t),
        rmax_upper_ez(p, q, t),
        rmax_upper_alpha2(p, q, t),
        rmax_lower_lll(p, q, t),
        rmax_lower_mrd(p, q, t),
        rmax_lower_recursive(p, q, t),
    ]


def best_bounds(p: NetworkParams, q: int, t: int) -> BestBounds:
    """Table-style choice of one upper and one lower bound, plus every bound evaluated.

    upper: alpha > 2 uses the double-counting bound when ``h < 2*ell + eps``
    and the subspace bound otherwise; alpha = 2 uses whichever gamma-form has
    the smaller exponent.  lower: the MRD bound when ``h < 2*ell + eps``,
    otherwise the local-lemma bound.
    """
    reports = all_bounds(p, q, t)
    by = {r.source: r for r in reports}
    high = high_regime(p)
    if p.alpha > 2:
        upper = by["subspace"] if high else by["ez"]
    else:
        c_exp, d_exp = alpha2_exponents(p, t)
        upper = by["alpha2"] if c_exp <= d_exp else by["ez"]
    lower = by["lll"] if high else by["mrd"]
    return BestBounds(lower, upper, reports)

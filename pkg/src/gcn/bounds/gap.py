"""Conditions on q^t, the figure curves, and bounds on the scalar-vs-vector field-size gap.

All thresholds are handled as ``log2`` of the bound on ``q^t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

import sympy

from ..errors import ParamViolation
from ..network import NetworkParams
from ..qcomb import LOG2_GAMMA
from .core import f_poly, g_poly, high_regime, log2_beta, theta

#: Search limit for the smallest t meeting the sufficient condition.
T_SEARCH_LIMIT = 1_000_000


def _require_r(p: NetworkParams) -> int:
    if p.r is None:
        raise ParamViolation("r is required")
    return p.r


def necessary_log_term(p: NetworkParams) -> float:
    """``log2((r+theta-alpha)/(gamma*theta))`` if ``h >= 2*ell+eps``, else ``log2(r/(gamma(alpha-1)))``."""
    r = _require_r(p)
    if high_regime(p):
        th = theta(p)
        if th < 1 or r + th - p.alpha <= 0:
            raise ParamViolation(f"theta = {th} is not positive; h exceeds the min-cut")
        return math.log2(r + th - p.alpha) - LOG2_GAMMA - math.log2(th)
    return math.log2(r) - LOG2_GAMMA - math.log2(p.alpha - 1)


def sufficient_log_term(p: NetworkParams) -> float:
    """``log2(r/beta)`` if ``h >= 2*ell+eps``, else ``log2(r/(alpha-1))``."""
    r = _require_r(p)
    if high_regime(p):
        return math.log2(r) - log2_beta(p.alpha)
    return math.log2(r) - math.log2(p.alpha - 1)


def necessary_qt_log2(p: NetworkParams, t: int) -> float:
    """Every (q, t)-solution has ``log2(q^t)`` at least this."""
    return necessary_log_term(p) / (p.ell * (p.eps * t + 1))


def sufficient_qt_log2(p: NetworkParams, t: int) -> float:
    """A (q, t)-solution exists once ``log2(q^t)`` reaches this."""
    L = sufficient_log_term(p)
    if high_regime(p):
        return (p.alpha - 1) * t / f_poly(p, t) * L
    return t / g_poly(p, t) * L


def _pow2(x: float) -> float:
    try:
        return 2.0**x
    except OverflowError:
        return math.inf


def necessary_qt(p: NetworkParams, t: int) -> float:
    return _pow2(necessary_qt_log2(p, t))


def sufficient_qt(p: NetworkParams, t: int) -> float:
    return _pow2(sufficient_qt_log2(p, t))


class FigureRow(NamedTuple):
    t: int
    necessary: float
    sufficient: float
    two_pow_t: float


def figure_curves(p: NetworkParams, t_max: int) -> list[FigureRow]:
    """Necessary and sufficient thresholds on ``q^t`` and the line ``2^t`` for ``t = 1..t_max``."""
    if t_max < 1:
        raise ParamViolation("t_max must be >= 1")
    return [FigureRow(t, necessary_qt(p, t), sufficient_qt(p, t), float(2**t)) for t in range(1, t_max + 1)]


# -- gap ------------------------------------------------------------------------------------

def is_prime_power_big(q: int) -> bool:
    if q < 2:
        return False
    if sympy.isprime(q):
        return True
    pp = sympy.perfect_power(q)
    return bool(pp) and sympy.isprime(pp[0])


def smallest_prime_power_at_least(x: int) -> int:
    q = max(2, x)
    while not is_prime_power_big(q):
        q += 1
    return q


def smallest_t_reaching(p: NetworkParams) -> int:
    """Smallest ``t`` with ``2^t`` at or above the necessary threshold (``t_A`` / ``t_B``)."""
    t = 1
    while t < necessary_qt_log2(p, t):
        t += 1
    return t


class MinQt(NamedTuple):
    log2_qt: float
    q: int
    t: int


def min_necessary_qt(p: NetworkParams) -> MinQt:
    """Smallest ``log2(q^t)`` over prime powers ``q`` and ``t >= 1`` meeting the necessary condition.

    ``(2, t_A)`` is feasible, so only pairs with ``t*log2(q) <= t_A`` can do
    better; for each ``t`` the smallest admissible prime power is taken.
    """
    t_a = smallest_t_reaching(p)
    best = MinQt(float(t_a), 2, t_a)
    for t in range(1, t_a + 1):
        need = necessary_qt_log2(p, t) / t  # log2 q must reach this
        if need > t_a / t:
            continue
        q = smallest_prime_power_at_least(math.ceil(2.0**need) if need > 0 else 2)
        while t * math.log2(q) < necessary_qt_log2(p, t):  # guard against rounding in 2**need
            q = smallest_prime_power_at_least(q + 1)
        val = t * math.log2(q)
        if val < best.log2_qt - 1e-12:
            best = MinQt(val, q, t)
    return best


def smallest_t_sufficient(p: NetworkParams, limit: int = T_SEARCH_LIMIT) -> int | None:
    """Smallest ``t`` with ``(2, t)`` meeting the sufficient condition (``t_Delta`` / ``t_star``)."""
    L = sufficient_log_term(p)
    if high_regime(p):
        def ok(t):
            return f_poly(p, t) / (p.alpha - 1) >= L
    else:
        def ok(t):
            return g_poly(p, t) >= L
    t = 1
    while not ok(t):
        t += 1
        if t > limit:
            return None
    return t


@dataclass
class GapReport:
    regime: str  # "high" for h >= 2*ell + eps, else "low"
    gap_upper_bits: float
    gap_lower_bits: float | None
    necessary_t1: float
    sufficient_t1: float
    witnesses: dict[str, Any] = field(default_factory=dict)
    closed_form: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime,
            "gap_upper_bits": self.gap_upper_bits,
            "gap_lower_bits": self.gap_lower_bits,
            "necessary_t1_log2": self.necessary_t1,
            "sufficient_t1_log2": self.sufficient_t1,
            "witnesses": self.witnesses,
            "closed_form": self.closed_form,
        }


def crossing_point(p: NetworkParams) -> float | None:
    """Positive root ``t'`` of ``t = necessary_qt_log2(t)``; needs ``eps >= 1``."""
    if p.eps < 1:
        return None
    L = necessary_log_term(p)
    inner = L / (p.ell * p.eps) + 1 / (4 * p.eps**2)
    if inner < 0:
        return None
    return math.sqrt(inner) - 1 / (2 * p.eps)


def gap_bounds(p: NetworkParams) -> GapReport:
    """Upper and lower bounds (in bits) on ``log2 q_s - log2 q_v``.

    upper: sufficient threshold at ``t = 1`` minus the smallest ``log2(q^t)``
    meeting the necessary condition;
    lower: necessary threshold at ``t = 1`` minus the smallest ``t`` for which
    ``q = 2`` meets the sufficient condition.
    The closed forms obtained from bounding these searches are reported too.
    """
    _require_r(p)
    if not p.nontrivial:
        raise ParamViolation("network is not in the non-trivially solvable range ell+eps < h <= alpha*ell+eps")
    high = high_regime(p)
    nec1 = necessary_qt_log2(p, 1)
    suf1 = sufficient_qt_log2(p, 1)
    mq = min_necessary_qt(p)
    t_reach = smallest_t_reaching(p)
    t_suff = smallest_t_sufficient(p)
    upper = suf1 - mq.log2_qt
    lower = None if t_suff is None else nec1 - t_suff
    wit = {
        ("t_A" if high else "t_B"): t_reach,
        ("A" if high else "B"): mq.log2_qt,
        "min_q": mq.q,
        "min_t": mq.t,
        ("t_Delta" if high else "t_star"): t_suff,
    }
    closed: dict[str, Any] = {}
    tp = crossing_point(p)
    closed["t_prime"] = tp
    closed["upper_valid"] = tp is not None
    closed["gap_upper_bits"] = None if tp is None else suf1 - max(tp - 1, 1)
    if high:
        coef = (p.min_cut - p.h) * p.eps
        ok = p.eps >= 1 and coef > 0
        closed["lower_valid"] = ok
        closed["gap_lower_bits"] = (
            nec1 - math.sqrt((p.alpha - 1) * sufficient_log_term(p) / coef) if ok else None
        )
    else:
        ok = p.eps >= 1
        Lr = sufficient_log_term(p)
        closed["lower_valid"] = ok
        closed["gap_lower_bits"] = (
            (Lr - 2) / (p.ell * (p.eps + 1)) - math.sqrt(Lr / (p.ell * p.eps)) if ok else None
        )
    return GapReport("high" if high else "low", upper, lower, nec1, suf1, wit, closed)

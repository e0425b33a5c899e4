"""Upper and lower bounds on the largest number of middle nodes admitting a (q, t)-solution.

Network parameters translate to covering-code parameters as
``n = h*t``, ``k = ell*t``, ``delta = (h - ell - eps)*t``.
"""
from __future__ import annotations

import math
from functools import lru_cache

from ..errors import ParamViolation
from ..network import NetworkParams
from ..qcomb import LOG2_GAMMA, gaussian_binomial as gb
from .core import BoundReport, f_poly, g_poly, log2_beta, log2_sum, theta


def rmax_upper_subspace(p: NetworkParams, q: int, t: int) -> BoundReport:
    """Upper bound from counting codewords inside the ``(h-eps)t``-spaces through a fixed space.

    Requires ``h - eps >= 2*ell``.
    """
    h, ell, eps, a = p.h, p.ell, p.eps, p.alpha
    th = theta(p)
    fl = (h - eps) // ell
    valid = h - eps >= 2 * ell and th >= 1
    notes = "" if valid else "needs 2*ell <= h - eps <= alpha*ell"
    exact = gb((eps + ell) * t, eps * t, q) * (th * (q ** (ell * t + 1) - 1) // (q - 1) - 1) + fl - 1
    approx = None
    if th >= 1:
        approx = log2_sum(LOG2_GAMMA + math.log2(th) + ell * t * (eps * t + 1) * math.log2(q), a - th)
    if exact <= 0:
        return BoundReport("subspace", "upper", -math.inf, None, approx, False, notes or "non-positive", {"theta": th})
    return BoundReport.from_exact("subspace", "upper", exact, approx_log2=approx, valid=valid, notes=notes,
                                  details={"theta": th})


def rmax_upper_alpha2(p: NetworkParams, q: int, t: int) -> BoundReport:
    """Upper bound for ``alpha = 2``: small subspaces lie in at most one codeword."""
    h, ell, eps = p.h, p.ell, p.eps
    kk = 2 * ell * t - (h - eps) * t + 1
    e = (h - ell) * (2 * ell + eps - h) * t * t + (h - ell) * t
    approx = LOG2_GAMMA + e * math.log2(q)
    in_range = 1 <= kk <= ell * t
    valid = p.alpha == 2 and in_range
    notes = "" if valid else ("needs alpha = 2" if in_range else "needs ell*t < (h-eps)*t <= 2*ell*t")
    details = {"subspace_dim": kk, "exponent": e}
    if not in_range:
        return BoundReport("alpha2", "upper", math.inf, None, approx, False, notes, details)
    exact = gb(h * t, kk, q) // gb(ell * t, kk, q)
    return BoundReport.from_exact("alpha2", "upper", exact, approx_log2=approx, valid=valid, notes=notes,
                                  details=details)


def rmax_upper_ez(p: NetworkParams, q: int, t: int) -> BoundReport:
    """Upper bound by double counting codewords against ``(h-eps)t - 1``-dimensional spaces."""
    h, ell, eps, a = p.h, p.ell, p.eps, p.alpha
    n, k = h * t, ell * t
    e = k * (eps * t + 1)
    approx = LOG2_GAMMA + math.log2(a - 1) + e * math.log2(q)
    if eps * t > (h - ell) * t - 1:
        return BoundReport("ez", "upper", math.inf, None, approx, False, "needs eps*t <= (h-ell)*t - 1")
    num = (a - 1) * gb(n, n - eps * t - 1, q)
    den = gb(n - k, n - k - eps * t - 1, q)
    exact = num // den
    reasons = []
    if not 1 < k < n:
        reasons.append("needs 1 < ell*t < h*t")
    cap = gb(n - eps * t - 1, k, q) + 1
    if not 2 <= a <= cap:
        reasons.append(f"needs alpha <= {cap}")
    return BoundReport.from_exact("ez", "upper", exact, approx_log2=approx, valid=not reasons,
                                  notes="; ".join(reasons), details={"exponent": e})


def rmax_lower_lll(p: NetworkParams, q: int, t: int) -> BoundReport:
    """Lower bound ``beta * q^(f(t)/(alpha-1))`` from the local lemma (the ``+1`` is dropped)."""
    f = f_poly(p, t)
    lb = log2_beta(p.alpha)
    value = lb + f / (p.alpha - 1) * math.log2(q)
    valid = 1 <= p.h <= p.min_cut
    return BoundReport("lll", "lower", value, None, None, valid, "" if valid else "needs h <= alpha*ell + eps",
                       {"f": f, "log2_beta": lb})


def rmax_lower_mrd(p: NetworkParams, q: int, t: int) -> BoundReport:
    """Lower bound ``(alpha-1) q^g(t)`` from the dual lifted MRD covering code."""
    g = g_poly(p, t)
    valid = p.h <= 2 * p.ell + p.eps and g >= 0
    if g < 0:
        return BoundReport("mrd", "lower", -math.inf, None, None, False, "needs h <= 2*ell + eps", {"g": g})
    return BoundReport.from_exact("mrd", "lower", (p.alpha - 1) * q**g, valid=valid,
                                  notes="" if valid else "needs h <= 2*ell + eps", details={"g": g})


def mrd_dual_size(n: int, k: int, delta: int, alpha: int, q: int) -> int:
    return (alpha - 1) * q ** (max(k, n - k) * (min(k, n - k) - delta + 1))


def _recursion(n: int, k: int, delta: int, alpha: int, q: int, outer: int) -> int:
    """Evaluate the split recursion; ``outer`` multiplies the product term."""

    @lru_cache(maxsize=None)
    def B(m: int) -> int:
        if m < k + delta:
            return alpha - 1
        best = mrd_dual_size(m, k, delta, alpha, q)
        if m < k + 2 * delta:
            return best
        for s in range(delta, m - k - delta + 1):
            if s < k:
                v = outer * q ** (k * (s - delta + 1)) * B(m - s)
            else:
                v = outer * q ** (s * (k - delta + 1)) * B(m - s) + B(s + k - delta)
            best = max(best, v)
        return best

    return B(n)


def covering_lower_recursive(n: int, k: int, delta: int, alpha: int, q: int) -> BoundReport:
    """Recursive lower bound on the largest ``alpha``-(n, k, delta)_q covering code.

    ``n < k + 2*delta`` is the dual-lifted-MRD size.  Otherwise the best split
    ``delta <= s <= n-k-delta`` is taken, with

    * ``s < k``:  ``q^(k(s-delta+1)) B(n-s)``
    * ``s >= k``: ``q^(s(k-delta+1)) B(n-s) + B(s+k-delta)``.

    Every sub-value ``B(m)`` is the larger of its own recursion and the
    dual-lifted-MRD size; when ``m < k + delta`` no ``alpha`` codewords can span
    enough, so ``B(m) = alpha - 1`` (copies of one codeword).

    The product term carries no extra ``alpha - 1`` factor: ``B(n-s)`` already
    holds every codeword ``alpha - 1`` times, and multiplying again overshoots
    the true maximum as soon as ``alpha >= 3`` (e.g. 18 > 14 at n=3, k=1,
    delta=1, alpha=3, q=2).  The value is therefore ``(alpha-1)`` times the
    ``alpha = 2`` recursion, which is a lower bound because repeating a
    2-code ``alpha - 1`` times gives an ``alpha``-code.  The overshooting form
    is kept in ``details["with_outer_factor"]``.

    The recursion is valid for ``alpha <= q^k + 1``; the dual-lifted-MRD value
    needs no such cap and is reported in ``details``.
    """
    if not (1 <= delta <= k and k + delta <= n and alpha >= 2):
        raise ParamViolation(f"need 1 <= delta <= k, k + delta <= n, alpha >= 2 (got n={n}, k={k}, delta={delta}, alpha={alpha})")
    value = _recursion(n, k, delta, alpha, q, 1)
    direct = mrd_dual_size(n, k, delta, alpha, q)
    valid = alpha <= q**k + 1
    return BoundReport.from_exact(
        "recursive", "lower", value, valid=valid,
        notes="" if valid else f"needs alpha <= q^k + 1 = {q**k + 1}",
        details={"mrd_dual": direct, "best_valid": value if valid else direct,
                 "with_outer_factor": _recursion(n, k, delta, alpha, q, alpha - 1)},
    )


def network_code_params(p: NetworkParams, t: int) -> tuple[int, int, int]:
    return p.h * t, p.ell * t, (p.h - p.ell - p.eps) * t


def rmax_lower_recursive(p: NetworkParams, q: int, t: int) -> BoundReport:
    n, k, d = network_code_params(p, t)
    if not (1 <= d <= k and k + d <= n):
        return BoundReport("recursive", "lower", -math.inf, None, None, False, "needs 1 <= delta <= k")
    return covering_lower_recursive(n, k, d, p.alpha, q)

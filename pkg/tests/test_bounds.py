import json
import math
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from gcn.bounds import (
    all_bounds,
    best_bounds,
    beta,
    compare_upper_bounds,
    covering_lower_recursive,
    f_poly,
    figure_curves,
    g_poly,
    gap_bounds,
    high_regime,
    min_necessary_qt,
    mrd_dual_size,
    necessary_qt,
    necessary_qt_log2,
    rmax_lower_lll,
    rmax_lower_mrd,
    rmax_upper_alpha2,
    rmax_upper_ez,
    rmax_upper_subspace,
    smallest_t_reaching,
    sufficient_qt,
    sufficient_qt_log2,
    theta,
)
from gcn.bounds.gap import crossing_point
from gcn.constructor import CoveringCodeParams
from gcn.errors import ParamViolation
from gcn.network import NetworkParams
from gcn.oracle import oracle_max_code
from gcn.qcomb import GAMMA

DATA = json.loads((Path(__file__).parent / "data" / "figure_curves.json").read_text())

NET_A20 = NetworkParams(12, 800_000, 20, 1, 2)
NET_A20_BIG_R = NetworkParams(12, 8_000_000, 20, 1, 2)
NET_A3 = NetworkParams(8, 800_000, 3, 1, 5)
NET_A8 = NetworkParams(13, 800_000, 8, 1, 5)


def gb_product(n, k, q):
    """Gaussian binomial from the product formula, as an independent check."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def sweep(alphas=(2, 3, 4), ells=(1, 2), epss=(0, 1, 2), qs=(2, 3), ts=(1, 2)):
    for a in alphas:
        for ell in ells:
            for eps in epss:
                for h in range(ell + eps + 1, a * ell + eps + 1):
                    p = NetworkParams(h, None, a, ell, eps)
                    for q in qs:
                        for t in ts:
                            yield p, q, t


# -- constants ---------------------------------------------------------------------------------

def test_constants():
    assert theta(NET_A20) == 11
    assert f_poly(NET_A20, 1) == 33
    assert f_poly(NET_A20, 2) == 10 * 2 * 4 + 12 * 2 + 1
    assert high_regime(NET_A20) and high_regime(NetworkParams(3, None, 2, 1, 1))
    assert not high_regime(NetworkParams(4, None, 3, 2, 1))


@pytest.mark.parametrize("alpha", [7, 8, 20, 50, 100])
def test_beta_above_one(alpha):
    assert beta(alpha) > 1


def test_beta_direct():
    for a in (2, 3, 10):
        direct = (math.factorial(a - 1) / (2 * math.e * GAMMA * a)) ** (1 / (a - 1))
        assert beta(a) == pytest.approx(direct, rel=1e-12)


@given(st.integers(1, 4), st.integers(0, 3), st.integers(2, 6), st.integers(1, 6), st.data())
def test_g_case_split(ell, eps, alpha, t, data):
    h = data.draw(st.integers(ell + eps + 1, alpha * ell + eps))
    p = NetworkParams(h, None, alpha, ell, eps)
    if h <= 2 * ell:
        assert g_poly(p, t) == ell * eps * t * t + ell * t
    else:
        assert g_poly(p, t) == (h - ell) * (2 * ell + eps - h) * t * t + (h - ell) * t


@given(st.integers(1, 4), st.integers(0, 3), st.integers(2, 8), st.data())
def test_f_linear_iff_minimal(ell, eps, alpha, data):
    h = data.draw(st.integers(ell + eps + 1, alpha * ell + eps))
    p = NetworkParams(h, None, alpha, ell, eps)
    second_difference = f_poly(p, 3) - 2 * f_poly(p, 2) + f_poly(p, 1)
    assert (second_difference == 0) == (h == alpha * ell + eps or eps == 0)
    if h == alpha * ell + eps:
        assert all(f_poly(p, t) == eps * t + 1 for t in range(1, 6))


# -- thresholds and figures --------------------------------------------------------------------

def test_threshold_examples():
    assert necessary_qt(NET_A20, 1) == pytest.approx(27.544680, rel=1e-6)
    assert necessary_qt(NET_A20, 5) == pytest.approx(2.470231, rel=1e-6)
    assert sufficient_qt(NET_A20, 1) == pytest.approx(910.202123, rel=1e-6)
    assert sufficient_qt(NET_A20, 4) == pytest.approx(11.443355, rel=1e-6)
    assert necessary_qt(NET_A3, 1) == pytest.approx(7.826813, rel=1e-6)
    assert sufficient_qt(NET_A8, 1) == pytest.approx(4297331.400977, rel=1e-6)


@pytest.mark.parametrize("entry", DATA, ids=lambda e: f"h{e['h']}-a{e['alpha']}-r{e['r']}")
def test_figure_regression(entry):
    p = NetworkParams(entry["h"], entry["r"], entry["alpha"], entry["ell"], entry["eps"])
    t_max = max(int(t) for t in entry["necessary"])
    rows = {row.t: row for row in figure_curves(p, t_max)}
    for key, col in (("necessary", 1), ("sufficient", 2)):
        for t, want in entry[key].items():
            assert rows[int(t)][col] == pytest.approx(float(want), rel=1e-3)
    assert all(row.two_pow_t == 2.0**row.t for row in rows.values())


def test_figure_curves_rejects_tmax():
    with pytest.raises(ParamViolation):
        figure_curves(NET_A20, 0)


def test_thresholds_need_r():
    with pytest.raises(ParamViolation):
        necessary_qt_log2(NetworkParams(12, None, 20, 1, 2), 1)


def test_low_regime_formulas():
    p = NetworkParams(4, 1000, 3, 2, 1)
    assert not high_regime(p)
    assert necessary_qt_log2(p, 2) == pytest.approx(math.log2(1000 / (GAMMA * 2)) / 6)
    assert sufficient_qt_log2(p, 2) == pytest.approx(2 / g_poly(p, 2) * math.log2(1000 / 2))


# -- gap -----------------------------------------------------------------------------------------

@pytest.mark.parametrize(
    "p, upper, lower",
    [(NET_A20, 6.83, 0.78), (NET_A20_BIG_R, 8.74, 0.89), (NET_A3, 5.34, -6.03), (NET_A8, 20.04, -24.03)],
)
def test_gap_annotations(p, upper, lower):
    g = gap_bounds(p)
    assert g.gap_upper_bits == pytest.approx(upper, abs=0.01)
    assert g.gap_lower_bits == pytest.approx(lower, abs=0.01)


def test_gap_witnesses_alpha20():
    g = gap_bounds(NET_A20)
    assert g.regime == "high"
    assert g.witnesses["t_A"] == 3 and g.witnesses["t_Delta"] == 4
    assert (g.witnesses["min_q"], g.witnesses["min_t"]) == (2, 3)


def gap_params():
    return st.builds(
        lambda ell, eps, alpha, frac, logr: _gap_point(ell, eps, alpha, frac, logr),
        st.integers(1, 2), st.integers(1, 3), st.integers(2, 12), st.floats(0, 1), st.integers(4, 14),
    )


def _gap_point(ell, eps, alpha, frac, logr):
    lo, hi = ell + eps + 1, alpha * ell + eps
    h = lo + int(frac * (hi - lo))
    return NetworkParams(h, max(alpha, 10**logr // 7), alpha, ell, eps)


@settings(max_examples=60, deadline=None)
@given(gap_params())
def test_gap_witnesses_minimal(p):
    g = gap_bounds(p)
    t_reach = g.witnesses["t_A" if g.regime == "high" else "t_B"]
    assert t_reach >= necessary_qt_log2(p, t_reach)
    assert all(t < necessary_qt_log2(p, t) for t in range(1, t_reach))
    t_suff = g.witnesses["t_Delta" if g.regime == "high" else "t_star"]
    if t_suff is not None:
        assert t_suff >= sufficient_qt_log2(p, t_suff)
        assert all(t < sufficient_qt_log2(p, t) for t in range(1, t_suff))
    m = min_necessary_qt(p)
    assert m.t * math.log2(m.q) == pytest.approx(m.log2_qt)
    assert m.log2_qt >= necessary_qt_log2(p, m.t) - 1e-12
    assert m.log2_qt <= t_reach


@settings(max_examples=60, deadline=None)
@given(gap_params())
def test_t_reach_is_ceiling_of_crossing(p):
    tp = crossing_point(p)
    if tp is not None and tp > 0:
        assert smallest_t_reaching(p) == max(1, math.ceil(tp))


def test_min_necessary_brute_force():
    p = NetworkParams(5, 10**6, 4, 1, 1)
    best = min(
        t * math.log2(q)
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49)
        for t in range(1, 40)
        if t * math.log2(q) >= necessary_qt_log2(p, t)
    )
    assert min_necessary_qt(p).log2_qt == pytest.approx(best)


@pytest.mark.parametrize("base", [NET_A20, NET_A3, NetworkParams(6, 1000, 5, 1, 2), NetworkParams(4, 500, 3, 2, 1)])
def test_gap_upper_grows_with_r(base):
    prev = None
    for i in range(12):
        g = gap_bounds(base.with_r(base.r * 2**i))
        if prev is not None:
            assert g.gap_upper_bits >= prev - 1.0 - 1e-9
        prev = g.gap_upper_bits
    assert gap_bounds(base.with_r(base.r * 2**40)).gap_upper_bits > gap_bounds(base).gap_upper_bits


def test_gap_rejects_trivial():
    with pytest.raises(ParamViolation):
        gap_bounds(NetworkParams(2, 10, 3, 1, 1))


# -- r_max bounds: examples ------------------------------------------------------------------

def test_alpha2_exponent_example():
    for ell in (1, 2, 3):
        p = NetworkParams(2 * ell + 1, None, 2, ell, ell)
        for t in (1, 2, 3):
            r = rmax_upper_alpha2(p, 2, t)
            assert r.details["exponent"] == (ell * ell - 1) * t * t + (ell + 1) * t


def test_ez_exact_small():
    p = NetworkParams(2, None, 2, 1, 0)
    assert rmax_upper_ez(p, 2, 1).value_exact == 3
    assert rmax_upper_alpha2(p, 2, 1).value_exact == 3
    assert oracle_max_code(CoveringCodeParams(2, 1, 1, 2, 2)).size == 3
    assert rmax_upper_ez(NetworkParams(3, None, 2, 1, 1), 2, 1).value_exact == 7
    assert not rmax_upper_alpha2(NetworkParams(3, None, 3, 1, 1), 2, 1).valid


def test_subspace_covers_oracle_example():
    r = rmax_upper_subspace(NetworkParams(4, None, 3, 1, 1), 2, 1)
    assert r.valid and r.value_exact >= oracle_max_code(CoveringCodeParams(4, 1, 2, 3, 2)).size
    assert not rmax_upper_subspace(NetworkParams(4, None, 3, 2, 1), 2, 1).valid


def test_mrd_small():
    r = rmax_lower_mrd(NetworkParams(2, None, 2, 1, 0), 2, 1)
    assert r.value_exact == 2 and r.valid


def test_lll_formula():
    p = NetworkParams(5, None, 4, 1, 2)
    r = rmax_lower_lll(p, 3, 2)
    assert 2**r.value_log2 == pytest.approx(beta(4) * 3 ** (f_poly(p, 2) / 3), rel=1e-9)


def test_exact_forms_against_product_formula():
    for p, q, t in sweep(ts=(1,)):
        h, ell, eps, a = p.h, p.ell, p.eps, p.alpha
        th = theta(p)
        want = gb_product(eps + ell, eps, q) * (th * sum(q**i for i in range(ell + 1)) - 1) + (h - eps) // ell - 1
        assert rmax_upper_subspace(p, q, t).value_exact in (want, None)
        ez = rmax_upper_ez(p, q, t)
        if ez.value_exact is not None:
            n, k = h, ell
            assert ez.value_exact == (a - 1) * gb_product(n, n - eps - 1, q) // gb_product(n - k, n - k - eps - 1, q)


def test_value_exact_matches_log():
    for p, q, t in sweep():
        for r in all_bounds(p, q, t):
            if r.value_exact:
                assert r.value_log2 == pytest.approx(math.log2(r.value_exact), rel=1e-9)


# -- recursive covering bound ----------------------------------------------------------------

def test_recursive_case_one_is_mrd_dual():
    for n, k, d in [(3, 2, 1), (4, 2, 2), (5, 3, 2), (6, 3, 2)]:
        for a in (2, 3):
            r = covering_lower_recursive(n, k, d, a, 2)
            assert n < k + 2 * d
            assert r.value_exact == mrd_dual_size(n, k, d, a, 2)


def test_recursive_small_example():
    r = covering_lower_recursive(4, 1, 1, 2, 2)
    # splits s = 1, 2: q*B(3) + B(1) with B(3) = q*B(2) + B(1) = 5, giving 11
    assert r.value_exact == 11
    assert r.value_exact >= r.details["mrd_dual"] == 8


def test_recursive_alpha_cap():
    r = covering_lower_recursive(4, 1, 1, 4, 2)
    assert not r.valid
    assert r.details["best_valid"] == r.details["mrd_dual"] == 3 * 2**3


def test_recursive_rejects_bad_params():
    for args in [(4, 1, 2, 2, 2), (3, 2, 2, 2, 2), (4, 2, 0, 2, 2), (4, 2, 1, 1, 2)]:
        with pytest.raises(ParamViolation):
            covering_lower_recursive(*args)


def test_recursive_scales_with_multiplicity():
    for n, k, d in [(5, 1, 1), (6, 2, 1), (7, 2, 2), (8, 3, 1)]:
        base = covering_lower_recursive(n, k, d, 2, 2).value_exact
        for a in (3, 4, 5):
            assert covering_lower_recursive(n, k, d, a, 2).value_exact == (a - 1) * base


def test_recursive_outer_factor_overshoots():
    # the form with an extra (alpha-1) on the product term exceeds the true maximum
    r = covering_lower_recursive(3, 1, 1, 3, 2)
    assert r.details["with_outer_factor"] == 18
    assert oracle_max_code(CoveringCodeParams(3, 1, 1, 3, 2)).size == 14 >= r.value_exact


# -- sandwich properties -------------------------------------------------------------------------

def test_lower_below_upper():
    for p, q, t in sweep():
        reps = all_bounds(p, q, t)
        lows = [r for r in reps if r.kind == "lower" and r.valid]
        ups = [r for r in reps if r.kind == "upper" and r.valid]
        for lo in lows:
            for up in ups:
                assert lo.value_log2 <= up.value_log2 + 1e-9, (p, q, t, lo.source, up.source)


@pytest.mark.parametrize("source", ["ez", "alpha2"])
def test_exact_below_gamma_form(source):
    for p, q, t in sweep():
        r = {b.source: b for b in all_bounds(p, q, t)}[source]
        if r.valid:
            assert r.value_log2 <= r.approx_log2 + 1e-12


def test_subspace_gamma_form_needs_extra_factor():
    # the closed gamma-form drops a factor q/(q-1) carried by (q^(ell t+1)-1)/(q-1)
    r = rmax_upper_subspace(NetworkParams(4, None, 2, 1, 2), 2, 2)
    assert r.valid and r.value_log2 > r.approx_log2
    for p, q, t in sweep(qs=(2, 3, 4, 5), ts=(1, 2, 3)):
        r = rmax_upper_subspace(p, q, t)
        if r.valid:
            th = theta(p)
            bound = GAMMA * th * Fraction(q, q - 1) * q ** (p.ell * t * (p.eps * t + 1)) + p.alpha - th
            assert r.value_exact <= bound


def test_subspace_gamma_form_holds_for_large_q():
    for p, q, t in sweep(qs=(3, 4, 5), ts=(1, 2)):
        r = rmax_upper_subspace(p, q, t)
        if r.valid:
            assert r.value_log2 <= r.approx_log2 + 1e-12


def test_upper_bounds_cover_oracle_at_t1():
    for n, k, d, a, q in [(3, 1, 1, 2, 2), (3, 1, 1, 3, 2), (4, 2, 1, 2, 2), (4, 2, 2, 3, 2), (3, 1, 1, 2, 3)]:
        best = oracle_max_code(CoveringCodeParams(n, k, d, a, q))
        assert best.exact
        p = NetworkParams(n, None, a, k, n - k - d)
        for r in all_bounds(p, q, 1):
            if not r.valid:
                continue
            if r.kind == "upper":
                assert best.size <= 2**r.value_log2 * (1 + 1e-12)
            else:
                assert 2**r.value_log2 <= best.size * (1 + 1e-12)


# -- comparison and table ---------------------------------------------------------------------

def test_compare_consistent_on_sweep():
    for p, q, t in sweep(alphas=(2, 3, 4, 8), ells=(1, 2), epss=(1, 2)):
        rep = compare_upper_bounds(p, q, t)
        assert rep.consistent, rep.notes


def test_compare_winner_is_smallest():
    rep = compare_upper_bounds(NetworkParams(6, None, 8, 1, 2), 2, 2)
    valid = {k: v for k, v in rep.values.items() if k in ("subspace", "ez", "alpha2") and v is not None}
    assert rep.winner in valid


def test_compare_alpha2_predicate():
    p = NetworkParams(3, None, 2, 1, 1)
    rep = compare_upper_bounds(p, 2, 3)
    c, d = rep.values["exponent_alpha2"], rep.values["exponent_ez"]
    assert (c, d) == ((3 - 1) * (2 + 1 - 3) * 9 + 2 * 3, 3 * 4)
    assert rep.predicates["compareAlpha2"]


def test_best_bounds_table():
    hi = best_bounds(NetworkParams(6, None, 4, 1, 2), 2, 2)
    assert (hi.upper.source, hi.lower.source) == ("subspace", "lll")
    lo = best_bounds(NetworkParams(4, None, 4, 2, 1), 2, 2)
    assert (lo.upper.source, lo.lower.source) == ("ez", "mrd")
    a2 = best_bounds(NetworkParams(3, None, 2, 1, 1), 2, 2)
    assert a2.upper.source == "alpha2"
    d = hi.as_dict()
    assert d["tightest_upper"] in {"subspace", "ez", "alpha2"}
    assert len(d["reports"]) == 6

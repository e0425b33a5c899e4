"""Bounds on the largest middle layer and on the scalar-vs-vector gap."""
from .compare import BestBounds, CompareReport, all_bounds, best_bounds, compare_upper_bounds
from .core import BoundReport, beta, f_poly, g_poly, high_regime, log2_beta, theta
from .gap import (
    FigureRow,
    GapReport,
    figure_curves,
    gap_bounds,
    min_necessary_qt,
    necessary_qt,
    necessary_qt_log2,
    smallest_t_reaching,
    smallest_t_sufficient,
    sufficient_qt,
    sufficient_qt_log2,
)
from .rmax import (
    covering_lower_recursive,
    mrd_dual_size,
    rmax_lower_lll,
    rmax_lower_mrd,
    rmax_lower_recursive,
    rmax_upper_alpha2,
    rmax_upper_ez,
    rmax_upper_subspace,
)

__all__ = [
    "BestBounds",
    "BoundReport",
    "CompareReport",
    "FigureRow",
    "GapReport",
    "all_bounds",
    "best_bounds",
    "beta",
    "compare_upper_bounds",
    "covering_lower_recursive",
    "f_poly",
    "figure_curves",
    "g_poly",
    "gap_bounds",
    "high_regime",
    "log2_beta",
    "min_necessary_qt",
    "mrd_dual_size",
    "necessary_qt",
    "necessary_qt_log2",
    "rmax_lower_lll",
    "rmax_lower_mrd",
    "rmax_lower_recursive",
    "rmax_upper_alpha2",
    "rmax_upper_ez",
    "rmax_upper_subspace",
    "smallest_t_reaching",
    "smallest_t_sufficient",
    "sufficient_qt",
    "sufficient_qt_log2",
    "theta",
]

"""Kernel selection.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``GCN_PURE_PYTHON`` is set to a non-empty value other than ``0``, the
numpy implementation in ``_pykernels`` is used.  Fields without lookup tables
(order above ``gf.TABLE_LIMIT``) always take the generic Python path.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

_force_python = os.environ.get("GCN_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_python:
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _pykernels


def use(name: str) -> None:
    """Switch kernels at runtime (``"cython"`` or ``"python"``); used by benchmarks and tests."""
    global _impl, BACKEND
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = _compiled
    elif name == "python":
        _impl = _pykernels
    else:
        raise ValueError(name)
    BACKEND = name


def compiled_available() -> bool:
    return _compiled is not None


def _as2d(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


def rref(field, a):
    t = field.tables
    if t is None:
        return _pykernels.rref_generic(a, field)
    return _impl.rref(_as2d(a), *t)


def rank(field, a) -> int:
    t = field.tables
    a = _as2d(a)
    if a.size == 0:
        return 0
    if t is None:
        return _pykernels.rank_generic(a, field)
    return int(_impl.rank(a, *t))


def first_deficient(field, blocks, alpha: int, threshold: int):
    t = field.tables
    blocks = np.ascontiguousarray(blocks, dtype=np.int64)
    if t is None:
        return _pykernels.first_deficient_generic(blocks, alpha, threshold, field)
    return _impl.first_deficient(blocks, alpha, threshold, *t)


def pack_search(vb_ptr, vb_idx, n_blocks, block_cap, vertex_cap, min_degree, first_nonzero, initial_best,
                node_limit: int = 0):
    return _impl.pack_search(
        np.asarray(vb_ptr, dtype=np.int64),
        np.asarray(vb_idx, dtype=np.int64),
        n_blocks,
        block_cap,
        vertex_cap,
        min_degree,
        first_nonzero,
        initial_best,
        node_limit,
    )

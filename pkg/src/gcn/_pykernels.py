"""Reference kernels in Python/numpy.

Same contracts as the compiled ``_kernels`` module.  Table-driven functions
take the ``add, mul, neg, inv`` lookup arrays of a field; the ``*_generic``
variants take a :class:`~gcn.gf.FieldSpec` and use its scalar methods, for
fields too large to tabulate.
"""
from __future__ import annotations

from math import comb

import numpy as np


def rref(a, add, mul, neg, inv):
    a = np.array(a, dtype=np.int64, copy=True)
    m, n = a.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = add[a[rows], neg[mul[col[rows, None], a[r][None, :]]]]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(a, add, mul, neg, inv):
    return _forward_rank(np.array(a, dtype=np.int64, copy=True), add, mul, neg, inv, None)


def _forward_rank(a, add, mul, neg, inv, stop_at):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m or (stop_at is not None and r >= stop_at):
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below] = add[a[below], neg[mul[a[below, c][:, None], a[r][None, :]]]]
        r += 1
    return r


def _insert_rows(basis, pivcols, new_rows, add, mul, neg, inv):
    """Extend an echelon basis by ``new_rows``.

    Invariant: every stored row is 1 at its own pivot and 0 at the pivots of
    all earlier rows, so one forward pass reduces a new vector completely.
    """
    basis = list(basis)
    pivcols = list(pivcols)
    for v in new_rows:
        v = v.copy()
        for row, pc in zip(basis, pivcols):
            c = v[pc]
            if c:
                v = add[v, neg[mul[c, row]]]
        nz = np.flatnonzero(v)
        if nz.size:
            pc = int(nz[0])
            basis.append(mul[inv[v[pc]], v])
            pivcols.append(pc)
    return basis, pivcols


def first_deficient(blocks, alpha, threshold, add, mul, neg, inv):
    """First (lexicographic) ``alpha``-subset of blocks whose stacked rank is below ``threshold``.

    Returns ``(subset_or_None, number_of_subsets_checked)``.  Subtrees whose
    prefix already reaches the threshold are counted without being expanded.
    """
    blocks = np.asarray(blocks, dtype=np.int64)
    r = blocks.shape[0]
    checked = 0
    chosen: list[int] = []

    def dfs(start, basis, pivcols):
        nonlocal checked
        depth = len(chosen)
        for i in range(start, r - (alpha - depth) + 1):
            nb, npc = _insert_rows(basis, pivcols, blocks[i], add, mul, neg, inv)
            chosen.append(i)
            if len(nb) >= threshold:
                checked += comb(r - 1 - i, alpha - depth - 1)
            elif depth + 1 == alpha:
                checked += 1
                return tuple(chosen)
            else:
                hit = dfs(i + 1, nb, npc)
                if hit is not None:
                    return hit
            chosen.pop()
        return None

    if alpha == 0:
        return (None, 1) if threshold <= 0 else ((), 1)
    hit = dfs(0, [], [])
    return hit, checked


def pack_search(vb_ptr, vb_idx, n_blocks, block_cap, vertex_cap, min_degree, first_nonzero, initial_best,
                node_limit=0):
    """Exact maximum of ``sum(x)`` with ``0 <= x_v <= vertex_cap`` and block loads ``<= block_cap``.

    Depth-first branch and bound over vertices in index order, trying larger
    multiplicities first.  Returns ``(best_value, best_assignment, complete)``;
    when nothing beats ``initial_best`` the assignment is None.  A positive
    ``node_limit`` stops the search after that many nodes with
    ``complete = False``.
    """
    nv = len(vb_ptr) - 1
    blocks_of = [list(vb_idx[vb_ptr[v]:vb_ptr[v + 1]]) for v in range(nv)]
    room = [block_cap] * n_blocks
    x = [0] * nv
    best = [initial_best, None]
    state = {"free": block_cap * n_blocks, "nodes": 0, "stopped": False}

    def feasible(v):
        m = vertex_cap
        for b in blocks_of[v]:
            if room[b] < m:
                m = room[b]
        return m

    def dfs(v, cur):
        if state["stopped"]:
            return
        state["nodes"] += 1
        if node_limit and state["nodes"] > node_limit:
            state["stopped"] = True
            return
        if v == nv:
            if cur > best[0]:
                best[0] = cur
                best[1] = list(x)
            return
        s = 0
        for u in range(v, nv):
            s += feasible(u)
        bound = min(s, state["free"] // min_degree if min_degree else s)
        if cur + bound <= best[0]:
            return
        top = feasible(v)
        low = 1 if (v == 0 and first_nonzero) else 0
        for val in range(top, low - 1, -1):
            if val:
                for b in blocks_of[v]:
                    room[b] -= val
                state["free"] -= val * len(blocks_of[v])
            x[v] = val
            dfs(v + 1, cur + val)
            if val:
                for b in blocks_of[v]:
                    room[b] += val
                state["free"] += val * len(blocks_of[v])
            x[v] = 0

    dfs(0, 0)
    return best[0], best[1], not state["stopped"]


# -- fields without lookup tables ---------------------------------------------------

def rref_generic(a, F):
    a = [[int(v) for v in row] for row in np.asarray(a)]
    m = len(a)
    n = len(a[0]) if m else (np.asarray(a).shape[1] if np.asarray(a).ndim == 2 else 0)
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        s = F.inv(a[r][c])
        a[r] = [F.mul(s, v) for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = np.array(a, dtype=np.int64).reshape(m, n)
    return out, r, pivots


def rank_generic(a, F):
    return rref_generic(a, F)[1]


def first_deficient_generic(blocks, alpha, threshold, F):
    from itertools import combinations

    blocks = np.asarray(blocks, dtype=np.int64)
    checked = 0
    for subset in combinations(range(blocks.shape[0]), alpha):
        checked += 1
        stacked = blocks[list(subset)].reshape(-1, blocks.shape[2])
        if rank_generic(stacked, F) < threshold:
            return subset, checked
    return None, checked

"""Exact maximum covering Grassmannian codes for small parameters.

``alpha`` codewords span fewer than ``k + delta`` dimensions exactly when they
all lie in one ``(k + delta - 1)``-dimensional subspace ``W``.  A multiset of
``k``-subspaces is therefore a covering code iff every such ``W`` contains at
most ``alpha - 1`` of its members (with multiplicity).  The search runs on this
incidence structure:

* ``alpha = 2``: a maximum clique in the graph joining subspaces that share no
  ``W`` (branch and bound with greedy-colouring bounds);
* ``alpha > 2``: an integer packing, solved by the ``pack_search`` kernel.

Both searches fix the first subspace as a member, which loses nothing because
GL(n, q) permutes the subspaces transitively and preserves the incidence.

The packing search is seeded with randomized greedy packings and runs under a
node budget.  If the budget runs out the result is a certified interval: the
witness proves ``size`` is attainable and ``upper`` is a proven bound on the
maximum; ``exact`` tells the two cases apart.
"""
from __future__ import annotations

import itertools
import random
from typing import NamedTuple

import numpy as np

from . import _backend
from .constructor import CoveringCode, CoveringCodeParams
from .errors import TooLarge
from .gf import MatrixGF, field_new, grassmannian_enumerate, mat_rref
from .qcomb import gaussian_binomial

#: Default bound on the number of k-subspaces the oracle will enumerate.
ORACLE_CAP = 2000
#: Default node budget for the packing search (alpha > 2).
NODE_LIMIT = 20_000_000
#: Randomized greedy restarts used to seed the packing search.
GREEDY_RESTARTS = 400


class OracleResult(NamedTuple):
    size: int
    witness: CoveringCode
    upper: int = -1     # proven bound on the maximum; equals size when exact
    exact: bool = True


class Incidence(NamedTuple):
    vertices: list          # the k-subspaces, in enumeration order
    blocks: list[list[int]]  # for every W, the indices of the k-subspaces inside it


def incidence(p: CoveringCodeParams) -> Incidence:
    F = field_new(p.q)
    verts = list(grassmannian_enumerate(p.n, p.k, F))
    index = {U.basis.entries: i for i, U in enumerate(verts)}
    d = p.k + p.delta - 1
    local = [U.basis for U in grassmannian_enumerate(d, p.k, F)]
    blocks = []
    for W in grassmannian_enumerate(p.n, d, F):
        members = []
        for S in local:
            R, rank, _ = mat_rref(S @ W.basis)
            members.append(index[MatrixGF._wrap(F, R.data[:rank]).entries])
        blocks.append(sorted(members))
    return Incidence(verts, blocks)


def max_clique(adj: list[int]) -> list[int]:
    """Maximum clique of a graph given by adjacency bitsets, containing vertex 0."""
    best: list[int] = [0]

    def colour_order(P: int) -> tuple[list[int], list[int]]:
        order, colours = [], []
        uncoloured, c = P, 0
        while uncoloured:
            c += 1
            Q = uncoloured
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~adj[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                colours.append(c)
        return order, colours

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        order, colours = colour_order(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colours[i] <= len(best):
                return
            v = order[i]
            R.append(v)
            NP = P & adj[v]
            if NP:
                expand(R, NP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    if adj:
        expand([0], adj[0])
    return sorted(best)


def _greedy_packing(blocks_of: list[list[int]], n_blocks: int, block_cap: int, vertex_cap: int,
                    order=None, first_cap: int | None = None) -> list[int]:
    """Greedy packing in ``order``; a first pass with ``first_cap`` then a fill-up pass."""
    room = [block_cap] * n_blocks
    x = [0] * len(blocks_of)
    order = range(len(blocks_of)) if order is None else order
    caps = [vertex_cap] if first_cap is None else [first_cap, vertex_cap]
    for c in caps:
        for v in order:
            add = min([c - x[v]] + [room[b] for b in blocks_of[v]])
            if add > 0:
                for b in blocks_of[v]:
                    room[b] -= add
                x[v] += add
    return x


def _best_greedy(blocks_of, n_blocks, block_cap, vertex_cap, restarts: int, seed: int = 0) -> list[int]:
    best = _greedy_packing(blocks_of, n_blocks, block_cap, vertex_cap)
    rng = random.Random(seed)
    rest = list(range(1, len(blocks_of)))
    for _ in range(restarts):
        rng.shuffle(rest)
        x = _greedy_packing(blocks_of, n_blocks, block_cap, vertex_cap, [0] + rest,
                            first_cap=rng.randint(1, vertex_cap))
        if sum(x) > sum(best):
            best = x
    return best


def oracle_max_code(p: CoveringCodeParams, multiset_allowed: bool = True, cap: int = ORACLE_CAP,
                    node_limit: int = NODE_LIMIT) -> OracleResult:
    """Largest covering code for ``p``, with a witness.

    Multiplicities only matter for ``alpha > 2``; with ``multiset_allowed`` a
    subspace may appear up to ``alpha - 1`` times.  ``node_limit = 0`` removes
    the budget.
    """
    count = gaussian_binomial(p.n, p.k, p.q)
    if count > cap:
        raise TooLarge(f"{count} subspaces of dimension {p.k} in F_{p.q}^{p.n} exceed the cap of {cap}")
    inc = incidence(p)
    nv = len(inc.vertices)
    blocks_of: list[list[int]] = [[] for _ in range(nv)]
    for b, members in enumerate(inc.blocks):
        for v in members:
            blocks_of[v].append(b)

    if p.alpha == 2:
        full = (1 << nv) - 1
        conflict = [0] * nv
        for members in inc.blocks:
            mask = 0
            for v in members:
                mask |= 1 << v
            for v in members:
                conflict[v] |= mask
        adj = [full & ~conflict[v] for v in range(nv)]
        chosen = max_clique(adj)
        return OracleResult(len(chosen), CoveringCode(p, [inc.vertices[v] for v in chosen], 1), len(chosen), True)

    block_cap = p.alpha - 1
    vertex_cap = block_cap if multiset_allowed else 1
    nb = len(inc.blocks)
    greedy = _best_greedy(blocks_of, nb, block_cap, vertex_cap, GREEDY_RESTARTS)
    min_degree = min(len(bs) for bs in blocks_of)
    # root bound of the search: capacity counting
    root = min(nv * vertex_cap, block_cap * nb // min_degree) if min_degree else nv * vertex_cap
    ptr = np.zeros(nv + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(bs) for bs in blocks_of])
    idx = np.fromiter(itertools.chain.from_iterable(blocks_of), dtype=np.int64, count=int(ptr[-1]))
    if sum(greedy) >= root:
        best, x, complete = sum(greedy), None, True
    else:
        best, x, complete = _backend.pack_search(ptr, idx, nb, block_cap, vertex_cap, min_degree, True,
                                                 sum(greedy), node_limit)
    if x is None:
        best, x = sum(greedy), greedy
    words = [inc.vertices[v] for v in range(nv) if x[v]]
    mult = [int(x[v]) for v in range(nv) if x[v]]
    best = int(best)
    return OracleResult(best, CoveringCode(p, words, mult), best if complete else root, complete)

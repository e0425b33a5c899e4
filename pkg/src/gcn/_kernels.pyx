# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: GF(q) elimination, alpha-subset rank scan, packing search.

Contracts match ``gcn._pykernels``; fields are passed as lookup tables.
"""
from math import comb

import numpy as np

ctypedef long long i64


cdef int _eliminate(i64[:, ::1] A, const i64[:, ::1] add, const i64[:, ::1] mul,
                    const i64[::1] neg, const i64[::1] inv, bint full, int stop_at,
                    list pivots):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef i64 s, f, tmp
    for c in range(n):
        if r == m or (stop_at >= 0 and r >= stop_at):
            break
        p = -1
        for i in range(r, m):
            if A[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                tmp = A[r, j]
                A[r, j] = A[p, j]
                A[p, j] = tmp
        s = inv[A[r, c]]
        for j in range(c, n):
            A[r, j] = mul[s, A[r, j]]
        for i in range(0 if full else r + 1, m):
            if i == r:
                continue
            f = A[i, c]
            if f != 0:
                f = neg[f]
                for j in range(c, n):
                    if A[r, j] != 0:
                        A[i, j] = add[A[i, j], mul[f, A[r, j]]]
        if pivots is not None:
            pivots.append(c)
        r += 1
    return <int>r


def rref(a, add, mul, neg, inv):
    out = np.array(a, dtype=np.int64, copy=True, order="C")
    pivots = []
    cdef int r = _eliminate(out, add, mul, neg, inv, True, -1, pivots)
    return out, r, pivots


def rank(a, add, mul, neg, inv):
    work = np.array(a, dtype=np.int64, copy=True, order="C")
    if work.shape[0] == 0 or work.shape[1] == 0:
        return 0
    return _eliminate(work, add, mul, neg, inv, False, -1, None)


cdef class _SubsetScan:
    cdef const i64[:, :, ::1] blocks
    cdef const i64[:, ::1] add
    cdef const i64[:, ::1] mul
    cdef const i64[::1] neg
    cdef const i64[::1] inv
    cdef i64[:, :, ::1] W
    cdef i64[:, ::1] P
    cdef i64[::1] RK
    cdef i64[::1] tmp
    cdef i64[::1] chosen
    cdef int r, alpha, threshold, n, m
    cdef object checked

    def __init__(self, blocks, int alpha, int threshold, add, mul, neg, inv):
        self.blocks = blocks
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        self.r = blocks.shape[0]
        self.m = blocks.shape[1]
        self.n = blocks.shape[2]
        self.alpha = alpha
        self.threshold = threshold
        self.W = np.zeros((alpha + 1, max(self.n, 1), max(self.n, 1)), dtype=np.int64)
        self.P = np.zeros((alpha + 1, max(self.n, 1)), dtype=np.int64)
        self.RK = np.zeros(alpha + 1, dtype=np.int64)
        self.tmp = np.zeros(max(self.n, 1), dtype=np.int64)
        self.chosen = np.zeros(max(alpha, 1), dtype=np.int64)
        self.checked = 0

    cdef int _insert(self, int d, int bi):
        cdef int rk = <int>self.RK[d]
        cdef int n = self.n
        cdef int j, c, s, pc, c0
        cdef i64 f, sc
        for j in range(rk):
            self.P[d + 1, j] = self.P[d, j]
            for c in range(n):
                self.W[d + 1, j, c] = self.W[d, j, c]
        for s in range(self.m):
            if rk == n:
                break
            for c in range(n):
                self.tmp[c] = self.blocks[bi, s, c]
            for j in range(rk):
                pc = <int>self.P[d + 1, j]
                f = self.tmp[pc]
                if f != 0:
                    f = self.neg[f]
                    for c in range(pc, n):
                        if self.W[d + 1, j, c] != 0:
                            self.tmp[c] = self.add[self.tmp[c], self.mul[f, self.W[d + 1, j, c]]]
            c0 = -1
            for c in range(n):
                if self.tmp[c] != 0:
                    c0 = c
                    break
            if c0 >= 0:
                sc = self.inv[self.tmp[c0]]
                for c in range(n):
                    self.W[d + 1, rk, c] = self.mul[sc, self.tmp[c]]
                self.P[d + 1, rk] = c0
                rk += 1
        self.RK[d + 1] = rk
        return rk

    cdef int _dfs(self, int d, int start):
        cdef int i, rk
        for i in range(start, self.r - (self.alpha - d) + 1):
            rk = self._insert(d, i)
            self.chosen[d] = i
            if rk >= self.threshold:
                self.checked += comb(self.r - 1 - i, self.alpha - d - 1)
            elif d + 1 == self.alpha:
                self.checked += 1
                return 1
            elif self._dfs(d + 1, i + 1):
                return 1
        return 0

    def run(self):
        self.RK[0] = 0
        if self.alpha == 0:
            return (None, 1) if self.threshold <= 0 else ((), 1)
        if self._dfs(0, 0):
            return tuple(int(self.chosen[i]) for i in range(self.alpha)), self.checked
        return None, self.checked


def first_deficient(blocks, int alpha, int threshold, add, mul, neg, inv):
    blocks = np.ascontiguousarray(blocks, dtype=np.int64)
    return _SubsetScan(blocks, alpha, threshold, add, mul, neg, inv).run()


cdef class _Packer:
    cdef const i64[::1] ptr
    cdef const i64[::1] idx
    cdef i64[::1] room
    cdef i64[::1] x
    cdef i64[::1] best_x
    cdef int nv, vertex_cap, min_degree
    cdef bint first_nonzero
    cdef i64 free, best, nodes, node_limit
    cdef bint improved, stopped

    def __init__(self, ptr, idx, int n_blocks, int block_cap, int vertex_cap, int min_degree,
                 bint first_nonzero, i64 initial_best, i64 node_limit):
        self.ptr = ptr
        self.idx = idx
        self.nv = ptr.shape[0] - 1
        self.room = np.full(max(n_blocks, 1), block_cap, dtype=np.int64)
        self.x = np.zeros(max(self.nv, 1), dtype=np.int64)
        self.best_x = np.zeros(max(self.nv, 1), dtype=np.int64)
        self.vertex_cap = vertex_cap
        self.min_degree = min_degree
        self.first_nonzero = first_nonzero
        self.free = <i64>block_cap * n_blocks
        self.best = initial_best
        self.improved = False
        self.stopped = False
        self.nodes = 0
        self.node_limit = node_limit

    cdef inline i64 _feasible(self, int v):
        cdef i64 m = self.vertex_cap
        cdef i64 k
        for k in range(self.ptr[v], self.ptr[v + 1]):
            if self.room[self.idx[k]] < m:
                m = self.room[self.idx[k]]
        return m

    cdef void _apply(self, int v, i64 val):
        cdef i64 k
        for k in range(self.ptr[v], self.ptr[v + 1]):
            self.room[self.idx[k]] -= val
        self.free -= val * (self.ptr[v + 1] - self.ptr[v])

    cdef void _dfs(self, int v, i64 cur):
        cdef int u
        cdef i64 s = 0, bound, top, val, low
        if self.stopped:
            return
        self.nodes += 1
        if self.node_limit > 0 and self.nodes > self.node_limit:
            self.stopped = True
            return
        if v == self.nv:
            if cur > self.best:
                self.best = cur
                self.improved = True
                for u in range(self.nv):
                    self.best_x[u] = self.x[u]
            return
        for u in range(v, self.nv):
            s += self._feasible(u)
        bound = s
        if self.min_degree > 0 and self.free // self.min_degree < bound:
            bound = self.free // self.min_degree
        if cur + bound <= self.best:
            return
        top = self._feasible(v)
        low = 1 if (v == 0 and self.first_nonzero) else 0
        val = top
        while val >= low:
            if val:
                self._apply(v, val)
            self.x[v] = val
            self._dfs(v + 1, cur + val)
            if val:
                self._apply(v, -val)
            self.x[v] = 0
            val -= 1

    def run(self):
        self._dfs(0, 0)
        if not self.improved:
            return int(self.best), None, not self.stopped
        return int(self.best), [int(self.best_x[u]) for u in range(self.nv)], not self.stopped


def pack_search(vb_ptr, vb_idx, int n_blocks, int block_cap, int vertex_cap, int min_degree,
                bint first_nonzero, initial_best, node_limit=0):
    ptr = np.ascontiguousarray(vb_ptr, dtype=np.int64)
    idx = np.ascontiguousarray(vb_idx, dtype=np.int64)
    if idx.shape[0] == 0:
        idx = np.zeros(1, dtype=np.int64)
    return _Packer(ptr, idx, n_blocks, block_cap, vertex_cap, min_degree, first_nonzero,
                   int(initial_best), int(node_limit)).run()

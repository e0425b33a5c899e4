"""Constructions of covering Grassmannian codes and of network solutions.

* Gabidulin MRD codes, built from q-linearized polynomials over GF(q^m);
* lifting of matrices to subspaces, and the dual-of-lifted-MRD covering code;
* the map from a covering code to network coding matrices;
* the local-lemma feasibility check and a seeded random search for solutions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import Exhausted, InvalidDistance, NotEnoughCodewords, ParamViolation, TooLarge
from .gf import (
    FieldSpec,
    MatrixGF,
    Subspace,
    field_new,
    poly_mul,
    poly_rem,
    smallest_irreducible,
    subspace_dual,
    subspace_from_rows,
    to_digits,
)
from .network import SUBSET_GUARD, NetworkParams, NetworkSolution, SolvabilityClass, classify
from .qcomb import LOG2_GAMMA, binomial, log2_int

#: Covering codes with more distinct codewords than this are returned lazily.
MATERIALIZE_CAP = 1 << 16


def _combine(F: FieldSpec, coeffs: Sequence[int], mats: np.ndarray) -> np.ndarray:
    """``sum(c_u * mats[u])`` over ``F``; ``mats`` has shape ``(K, a, b)``."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if F.is_prime:
        return np.tensordot(coeffs, mats, axes=1) % F.characteristic
    t = F.tables
    out = np.zeros(mats.shape[1:], dtype=np.int64)
    for c, M in zip(coeffs, mats):
        if c:
            out = t.add[out, t.mul[c, M]]
    return out


# -- Gabidulin codes ------------------------------------------------------------------

class _Extension:
    """GF(q^m) as polynomials of degree < m over ``F`` (elements are coefficient lists)."""

    def __init__(self, F: FieldSpec, m: int):
        self.F, self.m = F, m
        self.modulus = smallest_irreducible(F, m)

    def mul(self, a, b):
        return poly_rem(poly_mul(a, b, self.F), self.modulus, self.F)

    def power(self, a, k: int):
        result, base = [1], list(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def vector(self, a) -> list[int]:
        return list(a) + [0] * (self.m - len(a))


@dataclass(frozen=True)
class MrdCode:
    """Linear Gabidulin code of ``rows x cols`` matrices with minimum rank distance ``d``.

    The code is a GF(q)-linear space of dimension ``K``; codeword ``i`` is the
    combination of the generator matrices with the base-``q`` digits of ``i``
    (least significant digit first).
    """

    q: int
    rows: int
    cols: int
    d: int
    generators: np.ndarray = dc_field(repr=False)

    @property
    def field(self) -> FieldSpec:
        return field_new(self.q)

    @property
    def dimension(self) -> int:
        return self.generators.shape[0]

    @property
    def size(self) -> int:
        return self.q**self.dimension

    def codeword(self, index: int) -> MatrixGF:
        if not 0 <= index < self.size:
            raise IndexError(index)
        digits = to_digits(index, self.q, self.dimension)
        return MatrixGF._wrap(self.field, _combine(self.field, digits, self.generators))

    def __iter__(self) -> Iterator[MatrixGF]:
        for i in range(self.size):
            yield self.codeword(i)


@lru_cache(maxsize=64)
def gabidulin_mrd(q: int, a: int, b: int, d: int) -> MrdCode:
    """MRD code of ``a x b`` matrices over GF(q) with minimum rank distance ``d``.

    With ``m = max(a, b)`` and ``n = min(a, b)``, codewords are the evaluations of
    ``sum_{i < n-d+1} f_i x^(q^i)`` (``f_i`` in GF(q^m)) at ``1, x, ..., x^(n-1)``,
    each expanded to an ``m x n`` matrix over GF(q) column by column and
    transposed when ``a < b``.
    """
    if not 1 <= d <= min(a, b):
        raise InvalidDistance(f"rank distance {d} outside 1..{min(a, b)}")
    F = field_new(q)
    m, n = max(a, b), min(a, b)
    E = _Extension(F, m)
    points = [[0] * j + [1] for j in range(n)]
    gens = []
    for i in range(n - d + 1):
        frob = [E.power(g, q**i) for g in points]
        for s in range(m):
            f = [0] * s + [1]
            cols = [E.vector(E.mul(f, g)) for g in frob]
            M = np.array(cols, dtype=np.int64).T  # m x n
            gens.append(M if a >= b else M.T)
    return MrdCode(q, a, b, d, np.array(gens, dtype=np.int64).reshape(len(gens), a, b))


def lift(A: MatrixGF) -> Subspace:
    """Row space of ``[I_k | A]``."""
    k = A.rows
    basis = np.hstack([np.eye(k, dtype=np.int64), A.data])
    return Subspace._trusted(MatrixGF._wrap(A.field, basis))


# -- covering codes --------------------------------------------------------------------

@dataclass(frozen=True)
class CoveringCodeParams:
    """Parameters of an ``alpha``-(n, k, delta)_q covering Grassmannian code.

    Only ``1 <= delta`` and ``k + delta <= n`` are required here; networks with
    ``h > 2*ell + eps`` lead to ``delta > k``.  Constructions that need
    ``delta <= k`` check it themselves.
    """

    n: int
    k: int
    delta: int
    alpha: int
    q: int

    def __post_init__(self):
        if self.delta < 1 or self.k < 1:
            raise ParamViolation(f"need k >= 1 and delta >= 1 (got k={self.k}, delta={self.delta})")
        if self.k + self.delta > self.n:
            raise ParamViolation(f"need k + delta <= n (got k={self.k}, delta={self.delta}, n={self.n})")
        if self.alpha < 2:
            raise ParamViolation(f"alpha must be >= 2 (got {self.alpha})")
        field_new(self.q)

    @classmethod
    def for_network(cls, params: NetworkParams, q: int, t: int) -> "CoveringCodeParams":
        """Code parameters whose codes with ``r`` members are (q, t)-solutions."""
        h, ell, eps = params.h, params.ell, params.eps
        return cls(h * t, ell * t, (h - ell - eps) * t, params.alpha, q)


class _LazyDualMrd(Sequence):
    """Distinct codewords of the dual-lifted MRD code, generated on demand."""

    def __init__(self, mrd: MrdCode):
        self.mrd = mrd

    @property
    def total(self) -> int:
        return self.mrd.size

    def __len__(self) -> int:
        return self.mrd.size  # OverflowError beyond sys.maxsize; use ``total``

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        if i < 0:
            i += len(self)
        return subspace_dual(lift(self.mrd.codeword(i)))


@dataclass(frozen=True)
class CoveringCode:
    """Multiset of ``k``-dimensional subspaces.

    ``distinct`` lists each codeword once; ``multiplicity`` is either one int
    shared by all of them or a per-codeword sequence.
    """

    params: CoveringCodeParams
    distinct: Sequence[Subspace]
    multiplicity: int | Sequence[int] = 1

    def mult(self, i: int) -> int:
        m = self.multiplicity
        return m if isinstance(m, int) else m[i]

    @property
    def distinct_count(self) -> int:
        d = self.distinct
        return d.total if isinstance(d, _LazyDualMrd) else len(d)

    @property
    def size(self) -> int:
        m = self.multiplicity
        return self.distinct_count * m if isinstance(m, int) else sum(m)

    @property
    def materialized(self) -> bool:
        return isinstance(self.distinct, (list, tuple))

    def entries(self) -> Iterator[tuple[Subspace, int]]:
        for i in range(self.distinct_count):
            yield self.distinct[i], self.mult(i)

    def expanded(self, limit: int | None = None) -> Iterator[Subspace]:
        """Codewords with repetition: every copy of one codeword, then the next."""
        emitted = 0
        for U, m in self.entries():
            for _ in range(m):
                if limit is not None and emitted >= limit:
                    return
                yield U
                emitted += 1


def covering_code_mrd_dual(p: CoveringCodeParams, cap: int = MATERIALIZE_CAP) -> CoveringCode:
    """``alpha - 1`` copies of the duals of a lifted MRD code.

    The MRD code consists of ``(n-k) x k`` matrices of rank distance ``delta``;
    lifting gives ``(n-k)``-dimensional subspaces and their duals are
    ``k``-dimensional.  Up to ``cap`` distinct codewords are materialized and
    sorted by basis; beyond that the codewords are produced lazily in MRD
    index order.
    """
    if p.delta > p.k:
        raise ParamViolation(f"need delta <= k (got delta={p.delta}, k={p.k})")
    m = p.n - p.k
    mrd = gabidulin_mrd(p.q, m, p.k, p.delta)
    if mrd.size > cap:
        return CoveringCode(p, _LazyDualMrd(mrd), p.alpha - 1)
    words = sorted((subspace_dual(lift(C)) for C in mrd), key=lambda U: U.key)
    return CoveringCode(p, words, p.alpha - 1)


def mrd_dual_size(p: CoveringCodeParams) -> int:
    k, m = p.k, p.n - p.k
    return (p.alpha - 1) * p.q ** (max(k, m) * (min(k, m) - p.delta + 1))


def covering_to_solution(params: NetworkParams, q: int, t: int, code: CoveringCode) -> NetworkSolution:
    """Use the first ``r`` codewords (with repetition) as coding matrices."""
    want = CoveringCodeParams.for_network(params, q, t)
    got = code.params
    if (got.n, got.k, got.delta, got.q) != (want.n, want.k, want.delta, want.q) or got.alpha < params.alpha:
        raise ParamViolation(f"code parameters {got} do not fit the network (need {want})")
    r = params.r
    if r is None:
        raise ParamViolation("network has no r")
    if code.size < r:
        raise NotEnoughCodewords(f"code has {code.size} codewords, network needs {r}")
    return NetworkSolution(q, t, tuple(U.basis for U in code.expanded(r)))


def solution_to_code(params: NetworkParams, sol: NetworkSolution) -> CoveringCode:
    """Row spaces of the coding matrices as a covering-code multiset."""
    p = CoveringCodeParams.for_network(params, sol.q, sol.t)
    counts: dict = {}
    order = []
    for M in sol.A:
        U = subspace_from_rows(M)
        if U.key not in counts:
            order.append(U)
            counts[U.key] = 0
        counts[U.key] += 1
    return CoveringCode(p, order, [counts[U.key] for U in order])


def check_covering(code: CoveringCode) -> tuple[int, ...] | None:
    """First ``alpha``-multisubset (indices into the expanded list) spanning too little, or None."""
    p = code.params
    words = list(code.expanded())
    blocks = np.stack([U.basis.data for U in words]) if words else np.zeros((0, p.k, p.n), dtype=np.int64)
    if len(words) < p.alpha:
        return None
    hit, _ = _backend.first_deficient(field_new(p.q), blocks, p.alpha, p.k + p.delta)
    return hit


# -- local lemma and random search ---------------------------------------------------------

def lll_f(params: NetworkParams, t: int) -> int:
    a, ell, eps, h = params.alpha, params.ell, params.eps, params.h
    return (a * ell + eps - h) * eps * t * t + (a * ell + 2 * eps - h) * t + 1


class LLLReport(NamedTuple):
    feasible: bool
    p_log2: float
    d_bound: int
    d_exact: int
    epd_log2: float
    feasible_exact_d: bool


def lll_feasible(params: NetworkParams, q: int, t: int) -> LLLReport:
    """Whether ``e * p * d <= 1`` for the bad events "receiver cannot decode".

    ``p = 2 * gamma * q^(-f(t))`` and ``d = alpha * C(r-1, alpha-1)``; the exact
    count of receivers sharing a middle node, ``C(r, alpha) - C(r-alpha, alpha)``,
    is reported alongside.
    """
    if params.r is None:
        raise ParamViolation("network has no r")
    r, a = params.r, params.alpha
    p_log2 = 1 + LOG2_GAMMA - lll_f(params, t) * math.log2(q)
    d = a * binomial(r - 1, a - 1)
    d_exact = binomial(r, a) - binomial(r - a, a)
    epd = math.log2(math.e) + p_log2 + log2_int(d)
    epd_exact = math.log2(math.e) + p_log2 + log2_int(d_exact)
    return LLLReport(epd <= 0, p_log2, d, d_exact, epd, epd_exact <= 0)


class RandomSearchResult(NamedTuple):
    solution: NetworkSolution
    attempts: int


def randomized_solution(
    params: NetworkParams,
    q: int,
    t: int,
    max_attempts: int = 10_000,
    rng_seed: int | None = 0,
    guard: int = SUBSET_GUARD,
) -> RandomSearchResult:
    """Draw all coding matrices uniformly at random until the draw is a solution."""
    if params.r is None:
        raise ParamViolation("network has no r")
    if classify(params) is SolvabilityClass.Unsolvable:
        raise ParamViolation(f"h={params.h} exceeds the min-cut {params.min_cut}; no solution exists")
    if binomial(params.r, params.alpha) > guard:
        raise TooLarge(f"C({params.r},{params.alpha}) receivers exceed the guard of {guard}")
    F = field_new(q)
    rng = np.random.default_rng(rng_seed)
    shape = (params.r, params.ell * t, params.h * t)
    threshold = (params.h - params.eps) * t
    for attempt in range(1, max_attempts + 1):
        blocks = rng.integers(0, q, size=shape, dtype=np.int64)
        hit, _ = _backend.first_deficient(F, blocks, params.alpha, threshold)
        if hit is None:
            mats = tuple(MatrixGF._wrap(F, B) for B in blocks)
            return RandomSearchResult(NetworkSolution(q, t, mats), attempt)
    raise Exhausted(f"no solution found in {max_attempts} random draws", max_attempts)

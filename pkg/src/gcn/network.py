"""The three-layer generalized combination network and its linear solutions.

A source holds ``h`` messages (each a length-``t`` vector over GF(q)).  Each of
``r`` middle nodes receives ``ell`` coded packets over ``ell`` parallel links
and forwards them.  There is one receiver for every ``alpha``-subset of middle
nodes; it additionally gets ``eps`` packets straight from the source.

A (q, t)-linear solution is the list of ``ell*t x h*t`` matrices ``A_i`` that the
source uses towards middle node ``i``.  It is valid when every ``alpha`` of them
stack to rank at least ``(h - eps) * t``; the direct links then fill the rest.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import (
    FieldMismatch,
    Inconsistent,
    InternalConsistencyError,
    ParamViolation,
    RankConditionUnmet,
    TooManySubsets,
)
from .gf import FieldSpec, MatrixGF, field_new, solve_linear
from .qcomb import binomial

#: Largest number of receivers verify_solution will enumerate.
SUBSET_GUARD = 10**7


class SolvabilityClass(enum.Enum):
    TriviallySolvable = "trivially_solvable"
    NonTrivial = "nontrivial"
    Unsolvable = "unsolvable"


@dataclass(frozen=True)
class NetworkParams:
    """Network shape ``(h, r, alpha, ell, eps)``.

    ``r`` may be None when only bounds on the largest admissible ``r`` are wanted.
    """

    h: int
    r: int | None
    alpha: int
    ell: int
    eps: int

    def __post_init__(self):
        if self.alpha < 2:
            raise ParamViolation(f"alpha must be >= 2 (got {self.alpha})")
        if self.ell < 1:
            raise ParamViolation(f"ell must be >= 1 (got {self.ell})")
        if self.h < 1:
            raise ParamViolation(f"h must be >= 1 (got {self.h})")
        if self.eps < 0:
            raise ParamViolation(f"eps must be >= 0 (got {self.eps})")
        if self.r is not None and self.r < self.alpha:
            raise ParamViolation(f"r must be >= alpha (got r={self.r}, alpha={self.alpha})")

    @property
    def receivers(self) -> int:
        if self.r is None:
            raise ParamViolation("r is not set")
        return binomial(self.r, self.alpha)

    @property
    def min_cut(self) -> int:
        return self.alpha * self.ell + self.eps

    @property
    def nontrivial(self) -> bool:
        return self.ell + self.eps < self.h <= self.min_cut

    @property
    def minimal(self) -> bool:
        return self.h == self.min_cut

    def with_r(self, r: int | None) -> "NetworkParams":
        return NetworkParams(self.h, r, self.alpha, self.ell, self.eps)


def classify(params: NetworkParams) -> SolvabilityClass:
    if params.h <= params.ell + params.eps:
        return SolvabilityClass.TriviallySolvable
    if params.h > params.min_cut:
        return SolvabilityClass.Unsolvable
    return SolvabilityClass.NonTrivial


@dataclass(frozen=True)
class NetworkSolution:
    """Coding matrices ``A_1..A_r``, each ``ell*t x h*t`` over GF(q)."""

    q: int
    t: int
    A: tuple[MatrixGF, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        if not self.A:
            raise ParamViolation("a solution needs at least one matrix")
        F = self.field
        shape = self.A[0].shape
        for M in self.A:
            if M.field != F:
                raise FieldMismatch(f"coding matrix over {M.field!r}, expected GF({self.q})")
            if M.shape != shape:
                raise ParamViolation(f"coding matrices have shapes {shape} and {M.shape}")

    @property
    def field(self) -> FieldSpec:
        return field_new(self.q)

    @property
    def r(self) -> int:
        return len(self.A)

    def blocks(self) -> np.ndarray:
        return np.stack([M.data for M in self.A])

    def drop(self, i: int) -> "NetworkSolution":
        return NetworkSolution(self.q, self.t, self.A[:i] + self.A[i + 1:])


def _check_shapes(params: NetworkParams, sol: NetworkSolution) -> None:
    want = (params.ell * sol.t, params.h * sol.t)
    if sol.A[0].shape != want:
        raise ParamViolation(f"coding matrices are {sol.A[0].shape}, network needs {want}")
    if params.r is not None and params.r != sol.r:
        raise ParamViolation(f"network has r={params.r} middle nodes, solution has {sol.r}")


class VerifyResult(NamedTuple):
    valid: bool
    first_failure: tuple[int, ...] | None
    checked: int


def verify_solution(params: NetworkParams, sol: NetworkSolution, guard: int = SUBSET_GUARD) -> VerifyResult:
    """Check the rank condition at every receiver.

    Receivers are scanned in lexicographic order of their ``alpha``-subsets;
    the first one whose stacked matrices have rank below ``(h - eps) * t`` is
    reported (0-based indices).
    """
    _check_shapes(params, sol)
    n_subsets = binomial(sol.r, params.alpha)
    if n_subsets > guard:
        raise TooManySubsets(f"{n_subsets} receivers exceed the guard of {guard}")
    threshold = (params.h - params.eps) * sol.t
    hit, checked = _backend.first_deficient(sol.field, sol.blocks(), params.alpha, threshold)
    return VerifyResult(hit is None, None if hit is None else tuple(int(i) for i in hit), int(checked))


def _stack(sol: NetworkSolution, subset: Sequence[int]) -> np.ndarray:
    return np.vstack([sol.A[i].data for i in subset])


def _greedy_completion(F: FieldSpec, stack: np.ndarray, rows: int) -> tuple[np.ndarray, int]:
    """Add unit vectors missing from the row space, lowest index first, up to ``rows`` of them."""
    n = stack.shape[1]
    current = stack
    rank = _backend.rank(F, current) if current.size else 0
    chosen = []
    for j in range(n):
        if rank == n or len(chosen) == rows:
            break
        e = np.zeros((1, n), dtype=np.int64)
        e[0, j] = 1
        trial = np.vstack([current, e])
        new_rank = _backend.rank(F, trial)
        if new_rank > rank:
            chosen.append(j)
            current, rank = trial, new_rank
    B = np.zeros((rows, n), dtype=np.int64)
    for i, j in enumerate(chosen):
        B[i, j] = 1
    return B, rank


def complete_direct_links(params: NetworkParams, sol: NetworkSolution, subset: Sequence[int]) -> MatrixGF:
    """Direct-link matrix ``B`` (``eps*t x h*t``) that makes the receiver's system full rank."""
    _check_shapes(params, sol)
    F = sol.field
    B, rank = _greedy_completion(F, _stack(sol, subset), params.eps * sol.t)
    if rank < params.h * sol.t:
        raise RankConditionUnmet(f"receiver {tuple(subset)} cannot be completed to full rank")
    return MatrixGF._wrap(F, B)


class ReceiverOutcome(NamedTuple):
    subset: tuple[int, ...]
    y: tuple[int, ...]
    decoded: tuple[int, ...]
    unique: bool
    ok: bool


def _receiver_subsets(r: int, alpha: int, max_receivers: int | None, seed) -> Iterator[tuple[int, ...]]:
    total = binomial(r, alpha)
    if max_receivers is None or total <= max_receivers:
        yield from itertools.combinations(range(r), alpha)
        return
    rng = np.random.default_rng(seed)
    seen: set[tuple[int, ...]] = set()
    while len(seen) < max_receivers:
        s = tuple(sorted(int(i) for i in rng.choice(r, size=alpha, replace=False)))
        if s not in seen:
            seen.add(s)
            yield s


def simulate(
    params: NetworkParams,
    sol: NetworkSolution,
    x: Sequence[int],
    rng_seed: int | None = 0,
    max_receivers: int | None = 10_000,
) -> list[ReceiverOutcome]:
    """Send ``x`` through the network and decode at every receiver.

    With more than ``max_receivers`` receivers a seeded random sample of them
    is simulated.  A receiver whose system is rank deficient still decodes
    (free variables set to zero) but is reported with ``unique=False``.
    """
    _check_shapes(params, sol)
    F = sol.field
    n = params.h * sol.t
    x = [int(v) for v in x]
    if len(x) != n:
        raise ParamViolation(f"message has length {len(x)}, expected {n}")
    out = []
    for subset in _receiver_subsets(sol.r, params.alpha, max_receivers, rng_seed):
        stack = _stack(sol, subset)
        B, _ = _greedy_completion(F, stack, params.eps * sol.t)
        G = MatrixGF._wrap(F, np.vstack([stack, B]))
        y = G @ x
        try:
            res = solve_linear(G, y)
        except Inconsistent as exc:  # y is in the column space by construction
            raise InternalConsistencyError(f"receiver {subset}: {exc}") from exc
        out.append(ReceiverOutcome(subset, tuple(y), res.x, res.unique, res.unique and list(res.x) == x))
    return out

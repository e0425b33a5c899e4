"""Exact q-analog combinatorics and the gamma approximations built on them."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

#: Constant in ``q^(k(n-k)) <= [n choose k]_q < GAMMA * q^(k(n-k))``.
GAMMA = 3.48
LOG2_GAMMA = math.log2(GAMMA)


def log2_int(n: int) -> float:
    """``log2`` of a positive integer of any size, to double precision."""
    if n <= 0:
        raise ValueError("log2 of a non-positive integer")
    bits = n.bit_length()
    if bits <= 1000:
        return math.log2(n)
    shift = bits - 64
    return shift + math.log2(n >> shift)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=4096)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^n``."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    value = 1
    for i in range(k):
        # value * (q^(n-i) - 1) is divisible by (q^(i+1) - 1) at every step
        value = value * (q ** (n - i) - 1) // (q ** (i + 1) - 1)
    return value


class GaussianBounds(NamedTuple):
    lower: int
    upper_log2: float


def gaussian_bounds(n: int, k: int, q: int) -> GaussianBounds:
    e = k * (n - k)
    return GaussianBounds(q**e, LOG2_GAMMA + e * math.log2(q))


def count_matrices_of_rank(m: int, n: int, s: int, q: int) -> int:
    """Number of ``m x n`` matrices over GF(q) of rank exactly ``s``."""
    if s < 0 or s > min(m, n):
        return 0
    num, den = 1, 1
    for j in range(s):
        num *= (q**m - q**j) * (q**n - q**j)
        den *= q**s - q**j
    value, rem = divmod(num, den)
    assert rem == 0
    return value


def count_matrices_of_rank_bound_log2(m: int, n: int, s: int, q: int) -> float:
    return LOG2_GAMMA + ((m + n) * s - s * s) * math.log2(q)

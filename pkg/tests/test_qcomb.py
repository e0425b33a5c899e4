import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gcn.gf import MatrixGF, field_new, grassmannian_enumerate
from gcn.qcomb import (
    GAMMA,
    binomial,
    count_matrices_of_rank,
    count_matrices_of_rank_bound_log2,
    gaussian_binomial,
    gaussian_bounds,
    log2_int,
)


def test_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(7, 0, 5) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 4, 2) == 0
    assert gaussian_bounds(4, 2, 2).lower == 16
    assert 2 ** gaussian_bounds(4, 2, 2).upper_log2 == pytest.approx(55.68)
    assert gaussian_bounds(3, 1, 3).lower == 9 and gaussian_binomial(3, 1, 3) == 13
    assert 2 ** gaussian_bounds(3, 1, 3).upper_log2 == pytest.approx(31.32)
    assert binomial(4, 2) == 6 and binomial(2, 3) == 0 and binomial(20, 3) == 1140
    assert GAMMA == 3.48


def test_against_enumeration():
    for q in (2, 3):
        for n in range(5):
            for k in range(n + 1):
                if gaussian_binomial(n, k, q) <= 2000:
                    assert sum(1 for _ in grassmannian_enumerate(n, k, q)) == gaussian_binomial(n, k, q)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sandwich_exact(q):
    for n in range(9):
        for k in range(n + 1):
            e = k * (n - k)
            g = gaussian_binomial(n, k, q)
            assert q**e <= g
            assert 100 * g < 348 * q**e  # g < 3.48 q^e, in integers
            assert g == gaussian_binomial(n, n - k, q)


def test_product_formula_big():
    # exact value for a large case, computed with fractions
    from fractions import Fraction
    n, k, q = 60, 25, 7
    v = Fraction(1)
    for i in range(k):
        v *= Fraction(q ** (n - i) - 1, q ** (k - i) - 1)
    assert v.denominator == 1 and gaussian_binomial(n, k, q) == v.numerator


def test_rank_count_enumerated():
    F = field_new(2)
    counts = {}
    for ent in itertools.product(range(2), repeat=4):
        r = MatrixGF(F, np.array(ent).reshape(2, 2)).rank()
        counts[r] = counts.get(r, 0) + 1
    assert counts[2] == count_matrices_of_rank(2, 2, 2, 2) == 6
    assert count_matrices_of_rank(3, 5, 0, 3) == 1
    assert sum(count_matrices_of_rank(2, 3, s, 2) for s in range(3)) == 64


@pytest.mark.parametrize("q", [2, 3])
def test_rank_count_partition(q):
    for m in range(1, 5):
        for n in range(1, 5):
            assert sum(count_matrices_of_rank(m, n, s, q) for s in range(min(m, n) + 1)) == q ** (m * n)
            for s in range(min(m, n) + 1):
                assert math.log2(count_matrices_of_rank(m, n, s, q)) <= count_matrices_of_rank_bound_log2(m, n, s, q)


@given(st.integers(1, 10**400))
def test_log2_int(n):
    assert log2_int(n) == pytest.approx(math.log2(n) if n < 2**1000 else n.bit_length() - 1, abs=1.0)
    if n < 2**900:
        assert log2_int(n) == pytest.approx(math.log2(n))


def test_log2_int_huge_is_accurate():
    n = 3**5000
    assert log2_int(n) == pytest.approx(5000 * math.log2(3), rel=1e-12)

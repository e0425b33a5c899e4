import itertools
import sys

import numpy as np
import pytest

from gcn import _backend


def pytest_terminal_summary(terminalreporter):
    lines = [ln for mod in list(sys.modules.values()) for ln in getattr(mod, "ACCEPTANCE_LINES", [])]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in dict.fromkeys(lines):
            terminalreporter.write_line(line)


@pytest.fixture(params=["cython", "python"])
def backend(request):
    """Run a test once per kernel backend; restores the previous choice afterwards."""
    if request.param == "cython" and not _backend.compiled_available():
        pytest.skip("compiled kernels not built")
    before = _backend.BACKEND
    _backend.use(request.param)
    yield request.param
    _backend.use(before)


def span_vectors(F, rows, n=None):
    """Every vector in the row span, by brute force over all coefficient tuples."""
    rows = [list(map(int, r)) for r in rows]
    n = len(rows[0]) if n is None else n
    out = set()
    for coeffs in itertools.product(range(F.order), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


def brute_rank(F, rows):
    size = len(span_vectors(F, rows))
    rank = 0
    while F.order**rank < size:
        rank += 1
    return rank


def all_vectors(q, n):
    return [tuple(v) for v in itertools.product(range(q), repeat=n)]


def random_matrix(rng, q, m, n):
    return rng.integers(0, q, size=(m, n), dtype=np.int64)

"""Finite fields GF(p^e), dense matrices over them, and canonical subspaces.

Field elements are plain integers in ``[0, q)``: the base-``p`` digits of an
integer are the coefficients of the polynomial it represents, least
significant digit first.  :class:`FieldElement` wraps an integer together with
its field for operator-style arithmetic; the hot paths work on raw integers
and on the lookup tables exposed by :attr:`FieldSpec.tables`.

Subspaces of ``F_q^n`` are stored by their reduced row echelon basis, so two
subspaces are equal exactly when their bases are equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import _backend
from .errors import (
    AmbientMismatch,
    DivisionByZero,
    FieldMismatch,
    Inconsistent,
    NotAPrimePower,
)

#: Fields up to this order get dense add/mul tables (used by the kernels).
TABLE_LIMIT = 1024
MAX_ORDER = 1 << 20


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, else None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


# -- digit / polynomial helpers ---------------------------------------------

def to_digits(value: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        value, d = divmod(value, base)
        out.append(d)
    return out


def from_digits(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], F: "FieldSpec") -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _poly_trim(out)


def poly_rem(a: Sequence[int], m: Sequence[int], F: "FieldSpec") -> list[int]:
    """Remainder of ``a`` modulo ``m`` over ``F`` (coefficients low-degree first)."""
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    if not m:
        raise DivisionByZero("polynomial division by zero")
    lead_inv = F.inv(m[-1])
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        coef = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = F.sub(a[shift + i], F.mul(coef, c))
        _poly_trim(a)
    return a


def smallest_irreducible(F: "FieldSpec", degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of ``degree`` over ``F``.

    Candidates are compared coefficient by coefficient starting from the
    constant term.  Irreducibility is decided by trial division against every
    monic polynomial of degree ``1 .. degree // 2``.
    """
    if degree == 1:
        return (0, 1)
    q = F.order
    divisors = [
        tuple(low) + (1,)
        for d in range(1, degree // 2 + 1)
        for low in itertools.product(range(q), repeat=d)
    ]
    for low in itertools.product(range(q), repeat=degree):
        cand = tuple(low) + (1,)
        if cand[0] == 0:
            continue  # divisible by x
        if all(poly_rem(cand, dv, F) for dv in divisors):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- fields -------------------------------------------------------------------

class FieldTables(NamedTuple):
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^e) with a fixed modulus.

    Build instances with :func:`field_new`; equal orders give identical specs.
    """

    characteristic: int
    degree: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    q = order

    @property
    def is_prime(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.order if self.is_prime else value)

    def elements(self) -> range:
        return range(self.order)

    # scalar arithmetic on raw integers

    def add(self, a: int, b: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        e = self.degree
        return from_digits([(x + y) % p for x, y in zip(to_digits(a, p, e), to_digits(b, p, e))], p)

    def neg(self, a: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (-a) % p
        if p == 2:
            return a
        return from_digits([(-x) % p for x in to_digits(a, p, self.degree)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a * b) % self.characteristic
        if a == 0 or b == 0:
            return 0
        log, exp = self._log_exp
        return int(exp[(log[a] + log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.degree == 1:
            return pow(a, -1, self.characteristic)
        log, exp = self._log_exp
        return int(exp[(-log[a]) % (self.order - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if self.degree == 1:
            return pow(a, k, self.characteristic)
        if a == 0:
            return 1 if k == 0 else 0
        log, exp = self._log_exp
        return int(exp[(log[a] * k) % (self.order - 1)])

    def _poly_mul_reduce(self, a: int, b: int) -> int:
        p, e = self.characteristic, self.degree
        prime = field_new(p)
        prod = poly_mul(_poly_trim(to_digits(a, p, e)), _poly_trim(to_digits(b, p, e)), prime)
        rem = poly_rem(prod, self.modulus, prime)
        return from_digits(rem, p)

    @cached_property
    def _log_exp(self) -> tuple[np.ndarray, np.ndarray]:
        """Discrete log / antilog tables w.r.t. the smallest primitive element."""
        q = self.order
        n = q - 1
        factors = [f for f in range(2, n + 1) if n % f == 0 and factor_prime_power(f) == (f, 1)]
        for g in range(2, q):
            x, powers = 1, [1]
            for _ in range(n - 1):
                x = self._poly_mul_reduce(x, g)
                powers.append(x)
            if all(powers[n // f] != 1 for f in factors):
                exp = np.array(powers, dtype=np.int64)
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(n, dtype=np.int64)
                return log, exp
        raise AssertionError("no primitive element")  # pragma: no cover

    @cached_property
    def tables(self) -> FieldTables | None:
        """Dense operation tables, or None for fields above :data:`TABLE_LIMIT`."""
        q, p, e = self.order, self.characteristic, self.degree
        if q > TABLE_LIMIT:
            return None
        idx = np.arange(q, dtype=np.int64)
        if e == 1:
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
            neg = (-idx) % p
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = [pow(int(a), -1, p) for a in idx[1:]]
        else:
            digits = np.array([to_digits(int(a), p, e) for a in idx], dtype=np.int64)
            weights = p ** np.arange(e, dtype=np.int64)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            neg = ((-digits) % p) @ weights
            log, exp = self._log_exp
            mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = exp[(-log[1:]) % (q - 1)]
        tabs = FieldTables(*(np.ascontiguousarray(t, dtype=np.int64) for t in (add, mul, neg, inv)))
        for t in tabs:
            t.setflags(write=False)
        return tabs


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldSpec:
    """Return GF(q); raises :class:`NotAPrimePower` unless ``q = p^e``."""
    pe = factor_prime_power(q)
    if pe is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    p, e = pe
    if q > MAX_ORDER:
        raise NotAPrimePower(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
    if e == 1:
        return FieldSpec(p, 1, (0, 1))
    return FieldSpec(p, e, smallest_irreducible(field_new(p), e))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not an element of {self.field!r}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        raise TypeError(f"cannot combine {type(other).__name__} with a field element")

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def coefficients(self) -> list[int]:
        """Polynomial coefficients over GF(p), constant term first."""
        return to_digits(self.value, self.field.characteristic, self.field.degree)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


# -- matrices -------------------------------------------------------------------

class MatrixGF:
    """Dense immutable matrix over a finite field."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data, cols: int | None = None):
        arr = np.array(data, dtype=np.int64)
        if arr.size == 0:
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            arr = arr.reshape(0 if arr.ndim < 2 else arr.shape[0], cols)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ValueError(f"entries out of range for {field!r}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def _wrap(cls, field: FieldSpec, arr: np.ndarray) -> "MatrixGF":
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        obj.field = field
        obj.data = arr
        return obj

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls._wrap(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        return cls._wrap(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_entries(cls, field: FieldSpec, rows: int, cols: int, entries: Sequence[int]) -> "MatrixGF":
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls(field, np.asarray(entries, dtype=np.int64).reshape(rows, cols), cols=cols)

    @classmethod
    def random(cls, field: FieldSpec, rows: int, cols: int, rng: np.random.Generator) -> "MatrixGF":
        return cls._wrap(field, rng.integers(0, field.order, size=(rows, cols), dtype=np.int64))

    @staticmethod
    def vstack(mats: Sequence["MatrixGF"], cols: int | None = None) -> "MatrixGF":
        if not mats:
            raise ValueError("vstack of no matrices")
        field = mats[0].field
        if any(m.field != field for m in mats):
            raise FieldMismatch("vstack across different fields")
        return MatrixGF._wrap(field, np.vstack([m.data for m in mats]))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.data.ravel())

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, key):
        return int(self.data[key]) if isinstance(key, tuple) else self.data[key]

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF._wrap(self.field, self.data.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.tolist()})"

    def _check(self, other: "MatrixGF") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF._wrap(self.field, _elementwise_add(self.field, self.data, other.data))

    def __sub__(self, other: "MatrixGF") -> "MatrixGF":
        self._check(other)
        return MatrixGF._wrap(self.field, _elementwise_add(self.field, self.data, _negate(self.field, other.data)))

    def __matmul__(self, other):
        if isinstance(other, MatrixGF):
            self._check(other)
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            return MatrixGF._wrap(self.field, _matmul(self.field, self.data, other.data))
        vec = np.asarray(other, dtype=np.int64).reshape(-1, 1)
        if vec.shape[0] != self.cols:
            raise ValueError(f"vector of length {vec.shape[0]} for {self.cols} columns")
        return [int(v) for v in _matmul(self.field, self.data, vec).ravel()]

    def rank(self) -> int:
        return _backend.rank(self.field, self.data)

    def rref(self) -> tuple["MatrixGF", int, list[int]]:
        return mat_rref(self)


def _elementwise_add(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return (a + b) % F.characteristic
    if F.tables is not None:
        return F.tables.add[a, b]
    return np.vectorize(F.add, otypes=[np.int64])(a, b)


def _negate(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    if F.is_prime:
        return (-a) % F.characteristic
    if F.tables is not None:
        return F.tables.neg[a]
    return np.vectorize(F.neg, otypes=[np.int64])(a)


def _matmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m, n = a.shape[0], b.shape[1]
    if F.is_prime and F.characteristic < (1 << 20):
        out = np.zeros((m, n), dtype=np.int64)
        # accumulate in chunks so partial sums stay inside int64
        step = max(1, (1 << 62) // max(1, (F.characteristic - 1) ** 2))
        for s in range(0, a.shape[1], step):
            out = (out + a[:, s:s + step] @ b[s:s + step, :]) % F.characteristic
        return out
    out = np.zeros((m, n), dtype=np.int64)
    for k in range(a.shape[1]):
        if F.tables is not None:
            out = F.tables.add[out, F.tables.mul[a[:, k][:, None], b[k][None, :]]]
        else:
            for i in range(m):
                for j in range(n):
                    out[i, j] = F.add(int(out[i, j]), F.mul(int(a[i, k]), int(b[k, j])))
    return out


class RrefResult(NamedTuple):
    matrix: MatrixGF
    rank: int
    pivot_cols: list[int]


def mat_rref(M: MatrixGF) -> RrefResult:
    """Reduced row echelon form; pivots are taken in column order, top row first."""
    R, rank, pivots = _backend.rref(M.field, M.data)
    return RrefResult(MatrixGF._wrap(M.field, R), rank, pivots)


class Solution(NamedTuple):
    x: tuple[int, ...]
    unique: bool
    rank: int
    nullity: int


def solve_linear(A: MatrixGF, y: Sequence[int]) -> Solution:
    """Solve ``A x = y``; free variables are set to zero.

    Raises :class:`Inconsistent` when the system has no solution.
    """
    if len(y) != A.rows:
        raise ValueError(f"right-hand side has length {len(y)}, expected {A.rows}")
    aug = np.hstack([A.data, np.asarray(y, dtype=np.int64).reshape(-1, 1)])
    R, rank, pivots = _backend.rref(A.field, aug)
    if pivots and pivots[-1] == A.cols:
        raise Inconsistent("linear system has no solution")
    x = [0] * A.cols
    for row, col in enumerate(pivots):
        x[col] = int(R[row, A.cols])
    return Solution(tuple(x), rank == A.cols, rank, A.cols - rank)


# -- subspaces --------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of ``F_q^n`` held by its RREF basis (``k x n``, full row rank)."""

    basis: MatrixGF

    def __post_init__(self):
        R, rank, _ = mat_rref(self.basis)
        if rank != self.basis.rows or R != self.basis:
            raise ValueError("basis must be in reduced row echelon form with full row rank")

    @classmethod
    def _trusted(cls, basis: MatrixGF) -> "Subspace":
        obj = object.__new__(cls)
        object.__setattr__(obj, "basis", basis)
        return obj

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def ambient(self) -> int:
        return self.basis.cols

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def key(self) -> tuple:
        """Sort key: lexicographic on the flattened RREF basis."""
        return (self.ambient, self.dim, self.basis.entries)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def dual(self) -> "Subspace":
        return subspace_dual(self)

    def __contains__(self, vector) -> bool:
        v = MatrixGF(self.field, [list(vector)], cols=self.ambient)
        return _backend.rank(self.field, np.vstack([self.basis.data, v.data])) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return subspace_sum(self, other).dim == other.dim

    def __repr__(self) -> str:
        return f"Subspace({self.field!r}, n={self.ambient}, k={self.dim}, {self.basis.tolist()})"


def subspace_from_rows(M: MatrixGF) -> Subspace:
    R, rank, _ = mat_rref(M)
    return Subspace._trusted(MatrixGF._wrap(M.field, R.data[:rank]))


def zero_subspace(field: FieldSpec, n: int) -> Subspace:
    return Subspace._trusted(MatrixGF.zeros(field, 0, n))


def full_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace._trusted(MatrixGF.identity(field, n))


def _same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient != V.ambient:
        raise AmbientMismatch(f"ambient dimensions {U.ambient} and {V.ambient} differ")
    if U.field != V.field:
        raise FieldMismatch(f"{U.field!r} vs {V.field!r}")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_ambient(U, V)
    return subspace_from_rows(MatrixGF._wrap(U.field, np.vstack([U.basis.data, V.basis.data])))


def span_dim(subspaces: Iterable[Subspace]) -> int:
    """Dimension of the sum of the given subspaces (no canonical form built)."""
    subspaces = list(subspaces)
    if not subspaces:
        return 0
    return _backend.rank(subspaces[0].field, np.vstack([S.basis.data for S in subspaces]))


def subspace_intersection_dim(U: Subspace, V: Subspace) -> int:
    _same_ambient(U, V)
    return U.dim + V.dim - span_dim((U, V))


def subspace_dual(U: Subspace) -> Subspace:
    """Orthogonal complement under the form ``sum(u_i * v_i)``."""
    F, n = U.field, U.ambient
    R = U.basis.data
    pivots = [int(np.flatnonzero(row)[0]) for row in R]
    free = [c for c in range(n) if c not in set(pivots)]
    rows = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        rows[i, f] = 1
        for r, pc in enumerate(pivots):
            rows[i, pc] = F.neg(int(R[r, f]))
    return subspace_from_rows(MatrixGF._wrap(F, rows.reshape(len(free), n)))


def _colex_combinations(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1])


def grassmannian_enumerate(n: int, k: int, q: int | FieldSpec) -> Iterator[Subspace]:
    """Yield every ``k``-dimensional subspace of ``F_q^n`` exactly once.

    Order: pivot-column sets in colexicographic order; within one pivot set the
    free entries (row-major) are read as a base-``q`` number, first entry most
    significant, counting upward from zero.
    """
    F = q if isinstance(q, FieldSpec) else field_new(q)
    if not 0 <= k <= n:
        return
    for pivots in _colex_combinations(n, k):
        pset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pset]
        base = np.zeros((k, n), dtype=np.int64)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        for values in itertools.product(range(F.order), repeat=len(free)):
            M = base.copy()
            for (i, j), v in zip(free, values):
                M[i, j] = v
            yield Subspace._trusted(MatrixGF._wrap(F, M))

"""Vectors, matrices and codes over F_{q^m}, plus rank-metric quantities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch, NoSolution, ParamError, SamplingFailure
from .field import ExtField, FieldElement


# -- linear algebra over the prime field ---------------------------------------

def rref_fq(M, q: int):
    """Row-reduced echelon form of an integer matrix modulo prime q."""
    A = np.array(M, dtype=np.int64) % q
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = A[r] * pow(int(A[r, c]), q - 2, q) % q
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % q
        pivots.append(c)
        r += 1
    return A, pivots


def rank_fq(M, q: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref_fq(M, q)[1])


def solve_fq(A, B, q: int):
    """Solve X @ A = B over F_q (rows of B independently); raise NoSolution."""
    A = np.asarray(A, dtype=np.int64)
    B = np.atleast_2d(np.asarray(B, dtype=np.int64))
    r = A.shape[0]
    aug = np.concatenate([A.T, B.T], axis=1)
    R, piv = rref_fq(aug, q)
    if any(p >= r for p in piv):
        raise NoSolution("inconsistent system over F_q")
    X = np.zeros((B.shape[0], r), dtype=np.int64)
    for i, p in enumerate(piv):
        X[:, p] = R[i, r:]
    return X


# -- vectors and matrices over F_{q^m} -------------------------------------------

def _coerce_elements(field: ExtField, values):
    out = []
    for v in values:
        out.append(field.element(v).coeffs)
    return np.array(out, dtype=np.int64).reshape(len(out), field.m)


class FieldVector:
    """A length-n vector over F_{q^m}; ``data`` has shape (n, m)."""

    __slots__ = ("field", "data")

    def __init__(self, field: ExtField, data):
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 2 or data.shape[1] != field.m:
            raise ValueError(f"vector data must have shape (n, {field.m}), got {data.shape}")
        self.field = field
        self.data = data

    @classmethod
    def from_elements(cls, field, values):
        values = list(values)
        if not values:
            return cls(field, np.zeros((0, field.m), dtype=np.int64))
        return cls(field, _coerce_elements(field, values))

    @classmethod
    def zeros(cls, field, n):
        return cls(field, np.zeros((n, field.m), dtype=np.int64))

    @classmethod
    def random(cls, field, n, rng):
        return cls(field, field.random_digits(rng, n))

    def __len__(self):
        return self.data.shape[0]

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return FieldVector(self.field, self.data[idx])
        return FieldElement(self.field, tuple(int(d) for d in self.data[idx]))

    def _same(self, other):
        if self.field != other.field:
            raise FieldMismatch("vectors over different fields")
        if len(self) != len(other):
            raise ValueError(f"length mismatch {len(self)} != {len(other)}")

    def __add__(self, other):
        self._same(other)
        return FieldVector(self.field, (self.data + other.data) % self.field.q)

    def __sub__(self, other):
        self._same(other)
        return FieldVector(self.field, (self.data - other.data) % self.field.q)

    def __neg__(self):
        return FieldVector(self.field, (-self.data) % self.field.q)

    def __mul__(self, scalar):
        s = self.field.element(scalar)
        return FieldVector(self.field, self.field.mul(self.data, s.digits))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            if self.field != other.field:
                raise FieldMismatch("operands over different fields")
            return FieldVector(self.field, self.field.matmul(self.data[None], other.data)[0])
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, FieldVector)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.field, self.data.tobytes()))

    def is_zero(self):
        return not self.data.any()

    def frobenius(self, s: int = 1):
        return FieldVector(self.field, self.field.frob(self.data, s))

    def hadamard(self, other):
        self._same(other)
        return FieldVector(self.field, self.field.mul(self.data, other.data))

    def as_row(self):
        return FieldMatrix(self.field, self.data[None])

    def __repr__(self):
        return f"FieldVector(n={len(self)}, {self.field!r})"


class FieldMatrix:
    """A rows x cols matrix over F_{q^m}; ``data`` has shape (rows, cols, m)."""

    __slots__ = ("field", "data")

    def __init__(self, field: ExtField, data):
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 3 or data.shape[2] != field.m:
            raise ValueError(f"matrix data must have shape (r, c, {field.m}), got {data.shape}")
        self.field = field
        self.data = data

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        data = np.stack([_coerce_elements(field, r) for r in rows])
        return cls(field, data)

    @classmethod
    def from_vectors(cls, field, vectors, cols=None):
        vectors = list(vectors)
        if not vectors:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, np.stack([v.data for v in vectors]))

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols, field.m), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        data = np.zeros((n, n, field.m), dtype=np.int64)
        data[np.arange(n), np.arange(n), 0] = 1
        return cls(field, data)

    @classmethod
    def random(cls, field, rows, cols, rng):
        return cls(field, field.random_digits(rng, (rows, cols)))

    @classmethod
    def from_base(cls, field, M):
        """Embed an integer matrix over F_q."""
        M = np.asarray(M, dtype=np.int64) % field.q
        data = np.zeros(M.shape + (field.m,), dtype=np.int64)
        data[..., 0] = M
        return cls(field, data)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape[:2]

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            if isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer)):
                return FieldElement(self.field, tuple(int(d) for d in self.data[i, j]))
            sub = self.data[i, j]
            if sub.ndim == 2:
                return FieldVector(self.field, sub)
            return FieldMatrix(self.field, sub)
        if isinstance(idx, (int, np.integer)):
            return FieldVector(self.field, self.data[idx])
        return FieldMatrix(self.field, self.data[idx])

    def row(self, i):
        return FieldVector(self.field, self.data[i])

    def row_vectors(self):
        return [self.row(i) for i in range(self.rows)]

    def _same(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} != {other.shape}")

    def __add__(self, other):
        self._same(other)
        return FieldMatrix(self.field, (self.data + other.data) % self.field.q)

    def __sub__(self, other):
        self._same(other)
        return FieldMatrix(self.field, (self.data - other.data) % self.field.q)

    def __neg__(self):
        return FieldMatrix(self.field, (-self.data) % self.field.q)

    def __mul__(self, scalar):
        s = self.field.element(scalar)
        return FieldMatrix(self.field, self.field.mul(self.data, s.digits))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            if self.field != other.field:
                raise FieldMismatch("operands over different fields")
            return FieldMatrix(self.field, self.field.matmul(self.data, other.data))
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, FieldMatrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.field, self.data.tobytes()))

    @property
    def T(self):
        return FieldMatrix(self.field, self.data.transpose(1, 0, 2))

    def is_zero(self):
        return not self.data.any()

    def frobenius(self, s: int = 1):
        return FieldMatrix(self.field, self.field.frob(self.data, s))

    def rank(self):
        return rref(self)[1]

    def inverse(self):
        n = self.rows
        if self.cols != n:
            raise ValueError("only square matrices are invertible")
        R, rank, _ = rref(hstack(self, FieldMatrix.identity(self.field, n)))
        if rank < n or not np.array_equal(R.data[:, :n], FieldMatrix.identity(self.field, n).data):
            raise NoSolution("matrix is singular")
        return FieldMatrix(self.field, R.data[:, n:])

    def __repr__(self):
        return f"FieldMatrix({self.rows}x{self.cols}, {self.field!r})"


def vstack(*mats):
    field = mats[0].field
    return FieldMatrix(field, np.concatenate([m.data for m in mats], axis=0))


def hstack(*mats):
    field = mats[0].field
    return FieldMatrix(field, np.concatenate([m.data for m in mats], axis=1))


# -- row reduction ---------------------------------------------------------------

def _rref_data(field: ExtField, data):
    # Entries are float64 and reduced lazily: only the pivot row and column are
    # brought into [0, q) at each step. Each step adds at most m^2 (q-1)^3 in
    # magnitude, which keeps every value exact for the sizes used here.
    A = np.array(data, dtype=np.float64)
    rows, cols = A.shape[:2]
    q = field.q
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = np.mod(A[r:, c], q)
        A[r:, c] = col
        nz = np.flatnonzero(col.any(axis=-1))
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        prow = np.mod(A[r, c:], q)
        inv = field.inv_digits(prow[0].astype(np.int64))
        prow = np.mod(prow @ field.mul_matrix(inv), q)
        A[r, c:] = prow
        factors = np.mod(A[:, c], q)
        factors[r] = 0
        if factors.any():
            A[:, c:] -= field.scaled_rows(factors, prow)
        pivots.append(c)
        r += 1
    return np.mod(A, q).astype(np.int64), r, pivots


def rref(M: FieldMatrix):
    """Return (R, rank, pivots) with R the row-reduced echelon form of M."""
    A, rank, pivots = _rref_data(M.field, M.data)
    return FieldMatrix(M.field, A), rank, pivots


def solve_right(A: FieldMatrix, b: FieldVector) -> FieldVector:
    """Some x with x @ A == b; NoSolution when b is outside the row space."""
    if len(b) != A.cols:
        raise ValueError(f"b has length {len(b)}, expected {A.cols}")
    r = A.rows
    aug = np.concatenate([A.data.transpose(1, 0, 2), b.data[:, None, :]], axis=1)
    R, _, piv = _rref_data(A.field, aug)
    if piv and piv[-1] == r:
        raise NoSolution("b is not in the row space of A")
    x = np.zeros((r, A.field.m), dtype=np.int64)
    for i, p in enumerate(piv):
        x[p] = R[i, r]
    return FieldVector(A.field, x)


def kernel_basis(M: FieldMatrix) -> FieldMatrix:
    """Full-rank matrix whose rows span {x : M @ x^T = 0}."""
    field = M.field
    n = M.cols
    R, rank, piv = rref(M)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n, field.m), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f, 0] = 1
        for i, p in enumerate(piv):
            K[t, p] = (-R.data[i, f]) % field.q
    return FieldMatrix(field, K)


def systematic_form(G: FieldMatrix):
    """[I | T] row-equivalent to G, or None when the leading block is singular."""
    R, rank, piv = rref(G)
    k = G.rows
    if rank != k or piv != list(range(k)):
        return None
    return R


# -- rank metric -----------------------------------------------------------------

def expand_to_base(v: FieldVector) -> np.ndarray:
    """m x n matrix over F_q whose column j holds the digits of v_j."""
    return v.data.T.copy()


def collapse_from_base(field: ExtField, B) -> FieldVector:
    return FieldVector(field, np.asarray(B, dtype=np.int64).T % field.q)


def rank_weight(v: FieldVector) -> int:
    if len(v) == 0:
        return 0
    return rank_fq(expand_to_base(v), v.field.q)


def support_basis(v: FieldVector) -> np.ndarray:
    """Digits of an F_q-basis of Supp(v), one element per row."""
    R, piv = rref_fq(v.data, v.field.q)
    return R[: len(piv)]


def column_rank_q(M: FieldMatrix) -> int:
    """Number of F_q-independent columns of M."""
    rows, cols, m = M.data.shape
    if rows == 0 or cols == 0:
        return 0
    stacked = M.data.transpose(0, 2, 1).reshape(rows * m, cols)
    return rank_fq(stacked, M.field.q)


# -- codes -----------------------------------------------------------------------

class LinearCode:
    """Row space over F_{q^m}; the basis is kept in reduced echelon form."""

    def __init__(self, field: ExtField, n: int, generators: FieldMatrix | None = None):
        self.field = field
        self.n = n
        if generators is None or generators.rows == 0:
            basis = FieldMatrix.zeros(field, 0, n)
        else:
            if generators.cols != n:
                raise ValueError(f"generators have {generators.cols} columns, expected {n}")
            if generators.field != field:
                raise FieldMismatch("generator matrix over a different field")
            R, rank, _ = rref(generators)
            basis = FieldMatrix(field, R.data[:rank])
        self.basis = basis

    @classmethod
    def from_matrix(cls, G: FieldMatrix):
        return cls(G.field, G.cols, G)

    @classmethod
    def full_space(cls, field, n):
        return cls(field, n, FieldMatrix.identity(field, n))

    @classmethod
    def random(cls, field, n, k, rng):
        for _ in range(100):
            code = cls(field, n, FieldMatrix.random(field, k, n, rng))
            if code.dim == k:
                return code
        raise SamplingFailure("could not sample a full-rank generator matrix")

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.n, self.basis.data.tobytes()))

    def __contains__(self, v: FieldVector):
        try:
            solve_right(self.basis, v)
        except NoSolution:
            return False
        return True

    def issubcode(self, other: "LinearCode") -> bool:
        return code_sum(self, other).dim == other.dim

    def __repr__(self):
        return f"LinearCode(n={self.n}, dim={self.dim}, q={self.field.q}, m={self.field.m})"


def _check_compatible(A: LinearCode, B: LinearCode):
    if A.field != B.field:
        raise FieldMismatch("codes over different fields")
    if A.n != B.n:
        raise ValueError(f"code lengths differ: {A.n} != {B.n}")


def code_sum(A: LinearCode, B: LinearCode) -> LinearCode:
    _check_compatible(A, B)
    return LinearCode(A.field, A.n, vstack(A.basis, B.basis))


def code_dual(A: LinearCode) -> LinearCode:
    if A.dim == 0:
        return LinearCode.full_space(A.field, A.n)
    return LinearCode(A.field, A.n, kernel_basis(A.basis))


def code_intersection(A: LinearCode, B: LinearCode) -> LinearCode:
    _check_compatible(A, B)
    return code_dual(code_sum(code_dual(A), code_dual(B)))


def code_frobenius(A: LinearCode, s: int) -> LinearCode:
    return LinearCode(A.field, A.n, A.basis.frobenius(s))


# -- F_q-subspaces of F_{q^m} -----------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasisQ:
    """F_q-linearly independent elements spanning a subspace of F_{q^m}."""

    field: ExtField
    elements: tuple

    @property
    def dim(self):
        return len(self.elements)

    @property
    def digits(self) -> np.ndarray:
        return np.array([e.coeffs for e in self.elements], dtype=np.int64).reshape(self.dim, self.field.m)

    def combine(self, coeffs) -> np.ndarray:
        """Digit array of sum_j coeffs[..., j] * elements[j] (coefficients in F_q)."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        return np.tensordot(coeffs, self.digits, axes=([-1], [0])) % self.field.q

    def contains(self, x) -> bool:
        digits = x.digits if isinstance(x, FieldElement) else np.asarray(x)
        try:
            solve_fq(self.digits, digits, self.field.q)
        except NoSolution:
            return False
        return True

    def coordinates(self, data) -> np.ndarray:
        """F_q coordinates of each element of a digit array in this basis."""
        data = np.asarray(data, dtype=np.int64)
        flat = data.reshape(-1, self.field.m)
        X = solve_fq(self.digits, flat, self.field.q)
        return X.reshape(data.shape[:-1] + (self.dim,))


def sample_subspace(field: ExtField, dim: int, rng) -> SubspaceBasisQ:
    if not 1 <= dim <= field.m:
        raise ParamError(f"subspace dimension {dim} outside [1, {field.m}]")
    for _ in range(1000):
        digits = field.random_digits(rng, dim)
        if rank_fq(digits, field.q) == dim:
            return SubspaceBasisQ(field, tuple(field.element(d) for d in digits))
    raise SamplingFailure("could not sample independent elements")


def random_full_rank_fq(q: int, rows: int, cols: int, rng, attempts: int = 1000) -> np.ndarray:
    """Uniform rows x cols matrix over F_q of rank min(rows, cols)."""
    for _ in range(attempts):
        E = rng.digits(q, (rows, cols))
        if rank_fq(E, q) == min(rows, cols):
            return E
    raise SamplingFailure("could not sample a full-rank matrix over F_q")

"""Gabidulin codes: Moore matrices, encoding and bounded rank-error decoding.

Decoding reconstructs a pair of linearized polynomials (V, N) with
V(y_i) = N(a_i) for every coordinate, then recovers the message polynomial as
the exact symbolic quotient of N by V. Any nonzero pair works whenever the
error has rank weight at most (n - k) // 2, so a single kernel vector of the
interpolation system suffices.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import DecodingFailure, ParamError
from .field import ExtField
from .linalg import (
    FieldMatrix,
    FieldVector,
    LinearCode,
    kernel_basis,
    rank_weight,
)


def moore_matrix(a: FieldVector, k: int) -> FieldMatrix:
    """k x n matrix whose row s is a^[s] (entrywise q^s-th power)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    field = a.field
    rows = [a.data]
    for _ in range(1, k):
        rows.append(field.frob(rows[-1], 1))
    data = np.stack(rows[:k]) if k else np.zeros((0, len(a), field.m), dtype=np.int64)
    return FieldMatrix(field, data)


class GabidulinCode:
    """The [n, k] Gabidulin code generated by a vector of rank weight n."""

    def __init__(self, a: FieldVector, k: int):
        n = len(a)
        field = a.field
        if n > field.m:
            raise ParamError(f"length n={n} exceeds extension degree m={field.m}")
        if not 1 <= k <= n:
            raise ParamError(f"dimension k={k} outside [1, {n}]")
        if rank_weight(a) != n:
            raise ParamError("generator vector must have rank weight n")
        self.a = a
        self.k = k
        self.n = n
        self.field: ExtField = field

    @classmethod
    def random(cls, field, n, k, rng):
        return cls(sample_generator_vector(field, n, rng), k)

    @property
    def t(self) -> int:
        """Unique-decoding radius."""
        return (self.n - self.k) // 2

    @cached_property
    def generator(self) -> FieldMatrix:
        return moore_matrix(self.a, self.k)

    @cached_property
    def code(self) -> LinearCode:
        return LinearCode(self.field, self.n, self.generator)

    @cached_property
    def _a_powers(self):
        # rows a^[0..k+t-1], shared by every decode call
        return moore_matrix(self.a, self.k + self.t).data

    def __repr__(self):
        return f"GabidulinCode(n={self.n}, k={self.k}, q={self.field.q}, m={self.field.m})"


def sample_generator_vector(field, n, rng, attempts=1000) -> FieldVector:
    for _ in range(attempts):
        a = FieldVector.random(field, n, rng)
        if rank_weight(a) == n:
            return a
    raise ParamError(f"could not find a rank-{n} vector in F_{field.q}^{field.m}")


def encode(code: GabidulinCode, msg: FieldVector) -> FieldVector:
    if len(msg) != code.k:
        raise ValueError(f"message length {len(msg)} != k={code.k}")
    return msg @ code.generator


def _compose(field, V, f, length):
    """Coefficients 0..length-1 of the symbolic product V o f."""
    out = np.zeros((length, field.m), dtype=np.int64)
    for i in range(V.shape[0]):
        if not V[i].any():
            continue
        shifted = field.mul(field.frob(f, i), V[i])
        hi = min(length, i + f.shape[0])
        if hi > i:
            out[i:hi] = (out[i:hi] + shifted[: hi - i]) % field.q
    return out


def _left_divide(field, V, N, k):
    """Find f (k coefficients) with V o f == N, or None."""
    nz = np.flatnonzero(V.any(axis=-1))
    dv = int(nz[-1])
    lead_inv = field.inv_digits(V[dv])
    frobs = [field.frob_matrix(i) for i in range(dv)]
    f = np.zeros((k, field.m), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        d = dv + j
        acc = N[d].copy()
        for i in range(dv):
            src = d - i
            if src < k and V[i].any():
                term = field._mod(f[src].astype(np.float64) @ frobs[i])
                acc = (acc - field.mul(V[i], term)) % field.q
        f[j] = field.frob(field.mul(acc, lead_inv), -dv)
    if not np.array_equal(_compose(field, V, f, N.shape[0]), N):
        return None
    return f


def decode(code: GabidulinCode, y: FieldVector):
    """Return (codeword, error, message) with rank_weight(error) <= code.t.

    Raises DecodingFailure when no codeword lies within the decoding radius.
    """
    field = code.field
    n, k, t = code.n, code.k, code.t
    if len(y) != n:
        raise ValueError(f"received word has length {len(y)}, expected {n}")
    if field != y.field:
        raise ValueError("received word over a different field")

    # columns: y^[0..t] for V, then -a^[0..k+t-1] for N
    y_pows = moore_matrix(y, t + 1).data
    a_pows = code._a_powers
    system = np.concatenate([y_pows, (-a_pows) % field.q], axis=0).transpose(1, 0, 2)
    K = kernel_basis(FieldMatrix(field, system))
    if K.rows == 0:
        raise DecodingFailure("interpolation system has only the trivial solution")
    sol = K.data[0]
    V, N = sol[: t + 1], sol[t + 1:]
    if not V.any():
        raise DecodingFailure("degenerate interpolation solution")
    f = _left_divide(field, V, N, k)
    if f is None:
        raise DecodingFailure("linearized division left a remainder")
    msg = FieldVector(field, f)
    c = encode(code, msg)
    e = y - c
    if rank_weight(e) > t:
        raise DecodingFailure("candidate codeword lies outside the decoding radius")
    return c, e, msg


def dual_generator_vector(code: GabidulinCode) -> FieldVector:
    """Vector b' with moore_matrix(b', n - k) generating the dual code."""
    n, k = code.n, code.k
    if k >= n:
        raise ParamError("the dual of a full-length code is the zero code")
    K = kernel_basis(moore_matrix(code.a, n - 1))
    if K.rows != 1:
        raise ArithmeticError("kernel of the (n-1)-row Moore matrix is not one-dimensional")
    b = K.row(0).frobenius(k - n + 1)
    H = moore_matrix(b, n - k)
    if not (H @ code.generator.T).is_zero():
        raise ArithmeticError("dual generator failed the orthogonality check")
    return b


def parity_check_matrix(code: GabidulinCode) -> FieldMatrix:
    return moore_matrix(dual_generator_vector(code), code.n - code.k)

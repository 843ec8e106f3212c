import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankpke import (
    ExtField,
    FieldMatrix,
    FieldVector,
    LinearCode,
    NoSolution,
    code_dual,
    code_intersection,
    code_sum,
    column_rank_q,
    rank_weight,
    rref,
    solve_right,
)
from rankpke.linalg import (
    collapse_from_base,
    expand_to_base,
    kernel_basis,
    rank_fq,
    rref_fq,
    sample_subspace,
    solve_fq,
    systematic_form,
    vstack,
)

from strategies import fields, seeds


def test_rank_fq_small():
    M = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    assert rank_fq(M, 2) == 2
    assert rank_fq(M, 3) == 3


def test_rref_fq_pivots():
    R, piv = rref_fq(np.array([[0, 2, 1], [0, 1, 2]]), 3)
    assert piv == [1]
    assert R[0].tolist() == [0, 1, 2]


def test_solve_fq():
    A = np.array([[1, 1], [0, 1]])
    X = solve_fq(A, np.array([[1, 0]]), 2)
    assert (X @ A % 2).tolist() == [[1, 0]]


def test_rank_weight_examples(f16):
    x = f16.gen()
    v = FieldVector.from_elements(f16, [x, x * x, x + x * x, f16.zero()])
    assert rank_weight(v) == 2
    assert rank_weight(FieldVector.zeros(f16, 4)) == 0
    # all coordinates in F_q: rank 1
    assert rank_weight(FieldVector.from_elements(f16, [1, 1, 0, 1])) == 1


def test_column_rank_can_exceed_rank(f16):
    x = f16.gen()
    M = FieldMatrix.from_rows(f16, [[1, x]])
    assert M.rank() == 1
    assert column_rank_q(M) == 2


def test_identity_inverse(f16):
    I = FieldMatrix.identity(f16, 3)
    assert I.inverse() == I


def test_singular_inverse_raises(f16):
    M = FieldMatrix.from_rows(f16, [[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        M.inverse()


def test_solve_right_inconsistent(f16):
    A = FieldMatrix.from_rows(f16, [[1, 0, 0]])
    with pytest.raises(NoSolution):
        solve_right(A, FieldVector.from_elements(f16, [0, 1, 0]))


def test_systematic_form_none_when_leading_block_singular(f16):
    G = FieldMatrix.from_rows(f16, [[0, 1, 0], [0, 0, 1]])
    assert systematic_form(G) is None


def test_dual_of_zero_code_is_full_space(f16):
    Z = LinearCode(f16, 4)
    assert code_dual(Z) == LinearCode.full_space(f16, 4)


def test_subspace_sampling(rng):
    F = ExtField(3, 6)
    V = sample_subspace(F, 3, rng)
    assert rank_fq(V.digits, 3) == 3
    x = F.element(V.combine([1, 2, 0]))
    assert V.contains(x)
    assert V.coordinates(x.digits).tolist() == [1, 2, 0]


@given(fields(), seeds(), st.integers(1, 5), st.integers(1, 6))
def test_rref_rank_and_kernel(F, rng, r, c):
    M = FieldMatrix.random(F, r, c, rng)
    R, rank, piv = rref(M)
    assert rank == len(piv) <= min(r, c)
    K = kernel_basis(M.T)
    assert K.rows == r - rank
    if K.rows:
        assert (K @ M).is_zero()


@given(fields(), seeds(), st.integers(1, 5))
def test_inverse_roundtrip(F, rng, n):
    M = FieldMatrix.random(F, n, n, rng)
    try:
        Mi = M.inverse()
    except NoSolution:
        assert M.rank() < n
        return
    assert M @ Mi == FieldMatrix.identity(F, n)
    assert Mi @ M == FieldMatrix.identity(F, n)


@given(fields(), seeds())
def test_solve_right_recovers(F, rng):
    A = FieldMatrix.random(F, 3, 5, rng)
    x = FieldVector.random(F, 3, rng)
    b = x @ A
    y = solve_right(A, b)
    assert y @ A == b


@given(fields(), seeds())
def test_rank_weight_invariant_under_fq_mixing(F, rng):
    v = FieldVector.random(F, 5, rng)
    B = rng.digits(F.q, (5, 5))
    if rank_fq(B, F.q) < 5:
        return
    w = collapse_from_base(F, expand_to_base(v) @ B % F.q)
    assert rank_weight(w) == rank_weight(v)
    assert rank_weight(v) <= min(F.m, 5)


@given(fields(), seeds(), st.integers(0, 4), st.integers(0, 4))
def test_code_dimension_formulas(F, rng, ka, kb):
    n = 5
    A = LinearCode(F, n, FieldMatrix.random(F, ka, n, rng)) if ka else LinearCode(F, n)
    B = LinearCode(F, n, FieldMatrix.random(F, kb, n, rng)) if kb else LinearCode(F, n)
    assert code_dual(code_dual(A)) == A
    assert code_dual(A).dim == n - A.dim
    assert code_sum(A, B).dim + code_intersection(A, B).dim == A.dim + B.dim
    assert code_intersection(A, B).issubcode(A)
    for row in code_intersection(A, B).basis.row_vectors():
        assert row in A and row in B


@given(fields(), seeds())
def test_frobenius_commutes_with_products(F, rng):
    A = FieldMatrix.random(F, 2, 3, rng)
    B = FieldMatrix.random(F, 3, 2, rng)
    assert (A @ B).frobenius(1) == A.frobenius(1) @ B.frobenius(1)


def test_vstack_shapes(f16, rng):
    A = FieldMatrix.random(f16, 2, 3, rng)
    assert vstack(A, A).shape == (4, 3)

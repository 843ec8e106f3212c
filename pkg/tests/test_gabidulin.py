import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankpke import (
    DecodingFailure,
    ExtField,
    FieldVector,
    GabidulinCode,
    LinearCode,
    ParamError,
    SeededRng,
    code_dual,
    code_sum,
    code_frobenius,
    decode,
    dual_generator_vector,
    encode,
    moore_matrix,
    rank_weight,
)
from rankpke.gabidulin import parity_check_matrix
from rankpke.schemes import sample_rank_error

import oracles
from strategies import seeds


@pytest.fixture(scope="module")
def tiny_code():
    return GabidulinCode.random(ExtField(2, 4), 4, 2, SeededRng(7))


def test_moore_matrix_rows(f16, rng):
    a = FieldVector.random(f16, 4, rng)
    M = moore_matrix(a, 3)
    assert M.row(0) == a
    assert M.row(2) == a.frobenius(2)


def test_generator_vector_must_have_full_rank(f16):
    with pytest.raises(ParamError):
        GabidulinCode(FieldVector.from_elements(f16, [1, 1, 0, 1]), 2)


def test_length_above_m_rejected(f16, rng):
    with pytest.raises(ParamError):
        GabidulinCode(FieldVector.random(f16, 5, rng), 2)


def test_mrd_exhaustive(tiny_code):
    # minimum rank distance n - k + 1 over all 255 nonzero codewords
    words = np.array(oracles.all_codewords(tiny_code))
    ranks = oracles.rank_table(4, 4)
    assert len(set(words.tolist())) == 256
    assert ranks[words[words != 0]].min() == 3


def test_beyond_radius_fails_or_is_verified(tiny_code):
    words = np.array(oracles.all_codewords(tiny_code))
    ranks = oracles.rank_table(4, 4)
    F = tiny_code.field
    rng = np.random.default_rng(0)
    checked = 0
    for y in rng.integers(0, 1 << 16, 400):
        dist, _ = oracles.nearest(int(y), words, ranks)
        if dist <= 1:
            continue
        checked += 1
        with pytest.raises(DecodingFailure):
            decode(tiny_code, oracles.unpack(F, int(y), 4))
    assert checked > 0


def test_dual_generator_vector(rng):
    F = ExtField(2, 9)
    code = GabidulinCode.random(F, 9, 4, rng)
    b = dual_generator_vector(code)
    assert rank_weight(b) == 9
    assert (parity_check_matrix(code) @ code.generator.T).is_zero()
    assert LinearCode.from_matrix(moore_matrix(b, 5)) == code_dual(code.code)


def test_dual_of_full_code_rejected(f16, rng):
    with pytest.raises(ParamError):
        dual_generator_vector(GabidulinCode.random(f16, 4, 4, rng))


@given(seeds(), st.sampled_from([(2, 12, 12, 5), (3, 8, 7, 3), (5, 6, 6, 2), (2, 16, 14, 8)]), st.data())
def test_decode_within_radius(rng, shape, data):
    q, m, n, k = shape
    F = ExtField(q, m)
    code = GabidulinCode.random(F, n, k, rng)
    msg = FieldVector.random(F, k, rng)
    c = encode(code, msg)
    t = data.draw(st.integers(0, code.t))
    e = sample_rank_error(F, n, t, rng) if t else FieldVector.zeros(F, n)
    c2, e2, msg2 = decode(code, c + e)
    assert c2 == c and e2 == e and msg2 == msg


@given(seeds(), st.integers(0, 4))
def test_frobenius_sum_is_longer_gabidulin(rng, s):
    F = ExtField(2, 10)
    k = 4
    code = GabidulinCode.random(F, 10, k, rng)
    total = code.code
    for i in range(1, s + 1):
        total = code_sum(total, code_frobenius(code.code, i))
    assert total == GabidulinCode(code.a, k + s).code

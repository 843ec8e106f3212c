import re

import pytest
from hypothesis import given, strategies as st

from rankpke import (
    Ciphertext,
    DecodingFailure,
    ExtField,
    FieldMatrix,
    FieldVector,
    ParamError,
    SchemeParams,
    SeededRng,
    column_rank_q,
    decrypt,
    encrypt,
    keygen,
    preset,
    rank_weight,
    sample_low_colrank_matrix,
    sample_P,
    sample_rank_error,
)
from rankpke.linalg import sample_subspace
from rankpke.schemes import public_weight

from strategies import seeds


@pytest.mark.parametrize("name,t", [
    ("loidreau-128", 5), ("loidreau-192", 6), ("loidreau-256", 7),
    ("mod1-128", 4), ("mod1-192", 5), ("mod1-256", 6),
    ("mod2-128", 3), ("mod2-192", 4), ("mod2-256", 5),
])
def test_public_weight_of_registry_rows(name, t):
    assert preset(name).t == t


@pytest.mark.parametrize("kwargs,fragment", [
    (dict(scheme="loidreau", q=3, m=20, n=20, k=10, lam=1), "lambda >= 2"),
    (dict(scheme="loidreau", q=3, m=20, n=21, k=10), "n <= m"),
    (dict(scheme="loidreau", q=3, m=20, n=20, k=20), "1 <= k < n"),
    (dict(scheme="mod1", q=3, m=20, n=20, k=12, l=0), "mod1 requires"),
    (dict(scheme="mod2", q=3, m=20, n=20, k=10, l=0), "l >= 1"),
    (dict(scheme="loidreau", q=3, m=20, n=20, k=10, l=1), "l must be 0"),
    (dict(scheme="loidreau", q=3, m=20, n=20, k=18), "t >= 1"),
    (dict(scheme="rsa", q=3, m=20, n=20, k=10), "unknown scheme"),
])
def test_param_validation(kwargs, fragment):
    with pytest.raises(ParamError, match=re.escape(fragment)):
        SchemeParams(**kwargs)


def test_explicit_wrong_t_rejected():
    with pytest.raises(ParamError):
        SchemeParams("loidreau", 3, 20, 20, 10, t=5)


def test_k_pub():
    assert preset("mod1-128").k_pub == 21
    assert preset("mod2-128").k_pub == 30


@pytest.mark.parametrize("name", ["loidreau-demo", "mod1-demo", "mod2-demo"])
def test_roundtrip_demo(name):
    p = preset(name)
    rng = SeededRng(99)
    kp = keygen(p, rng)
    assert kp.public.G_pub.shape == (p.k_pub, p.n)
    if p.systematic:
        assert kp.public.G_pub[:, :p.k_pub] == FieldMatrix.identity(p.field(), p.k_pub)
    for _ in range(5):
        msg = FieldVector.random(p.field(), p.k_pub, rng)
        assert decrypt(kp.secret, encrypt(kp.public, msg, rng)) == msg


def test_keygen_deterministic():
    p = preset("mod2-demo")
    a = keygen(p, SeededRng(5))
    b = keygen(p, SeededRng(5))
    assert a.public == b.public and a.secret == b.secret


def test_scrambler_entries_in_subspace(rng):
    F = ExtField(2, 10)
    V = sample_subspace(F, 2, rng)
    P = sample_P(F, 6, V, rng)
    for i in range(6):
        for j in range(6):
            assert V.contains(P[i, j])
    assert P.rank() == 6


def test_mod2_mask_column_rank():
    p = preset("mod2-demo")
    kp = keygen(p, SeededRng(3))
    M = kp.secret.mask_matrix()
    assert column_rank_q(M) == p.l


def test_mod1_public_code_inside_secret_code():
    p = preset("mod1-demo")
    kp = keygen(p, SeededRng(4))
    sec = kp.secret.code.code
    scrambled = kp.public.G_pub @ kp.secret.P
    for row in scrambled.row_vectors():
        assert row in sec


def test_decryption_fails_on_heavy_error():
    p = preset("loidreau-demo")
    rng = SeededRng(8)
    kp = keygen(p, rng)
    msg = FieldVector.random(p.field(), p.k, rng)
    c = msg @ kp.public.G_pub + sample_rank_error(p.field(), p.n, 8, rng)
    with pytest.raises(DecodingFailure):
        decrypt(kp.secret, Ciphertext(p, c))


@given(seeds(), st.integers(1, 6))
def test_rank_error_weight(rng, t):
    F = ExtField(3, 8)
    e = sample_rank_error(F, 10, t, rng)
    assert rank_weight(e) == t


@given(seeds(), st.integers(1, 4))
def test_low_colrank_matrix(rng, l):
    F = ExtField(2, 9)
    M = sample_low_colrank_matrix(F, 4, 9, l, rng)
    assert column_rank_q(M) == l
    assert M.rank() <= l


def test_sampler_bounds():
    F = ExtField(2, 5)
    with pytest.raises(ParamError):
        sample_rank_error(F, 4, 5, SeededRng(0))
    with pytest.raises(ParamError):
        sample_low_colrank_matrix(F, 2, 4, 0, SeededRng(0))


@given(st.integers(4, 40), st.data())
def test_public_weight_formula(n, data):
    k = data.draw(st.integers(1, n - 1))
    assert public_weight("loidreau", n, k, 2, 0) == (n - k) // 4
    l = data.draw(st.integers(0, 3))
    assert public_weight("mod2", n, k, 2, l) == (n - k - 2 * l) // 4

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankpke import DivisionByZero, ExtField, FieldMismatch, ParamError, frobenius
from rankpke.field import default_modulus, is_irreducible, poly_divmod, poly_mul

from strategies import elements, fields, seeds


def test_default_modulus_gf16():
    # x^4 + x + 1, coefficients lowest degree first
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)


def test_default_modulus_gf9():
    assert default_modulus(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("q,m", [(2, 1), (2, 7), (3, 4), (5, 3), (3, 57)])
def test_default_modulus_irreducible(q, m):
    f = default_modulus(q, m)
    assert len(f) == m + 1 and f[-1] == 1
    assert is_irreducible(list(f), q)


def test_reducible_modulus_rejected():
    with pytest.raises(ParamError):
        ExtField(2, 4, (1, 0, 1, 0, 1))  # (x^2 + x + 1)^2


def test_non_prime_q_rejected():
    with pytest.raises(ParamError):
        ExtField(4, 2)


def test_poly_divmod_roundtrip():
    a, b = [1, 2, 0, 1, 2], [2, 1, 1]
    quo, rem = poly_divmod(a, b, 3)
    back = poly_mul(quo, b, 3)
    back = [(x + (rem[i] if i < len(rem) else 0)) % 3 for i, x in enumerate(back)]
    assert back == a


def test_gf16_table_entries(f16):
    x = f16.gen()
    assert x ** 4 == f16.element(0b0011)  # x^4 = x + 1
    assert x ** 15 == f16.one()
    assert (x ** 3).inverse() == x ** 12


def test_elements_enumerate_field(f27):
    values = {int(e) for e in f27.elements()}
    assert values == set(range(27))


def test_zero_inverse_raises(f16):
    with pytest.raises(DivisionByZero):
        f16.zero().inverse()


def test_mixed_fields_rejected(f16, f27):
    with pytest.raises(FieldMismatch):
        f16.one() + f27.one()


@given(st.data())
def test_ring_axioms(data):
    F = data.draw(fields())
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == F.zero()
    assert a * F.one() == a


@given(st.data())
def test_inverse(data):
    F = data.draw(fields())
    a = data.draw(elements(F))
    if a.is_zero():
        return
    assert a * a.inverse() == F.one()
    assert a / a == F.one()


@given(st.data(), st.integers(-10, 10))
def test_frobenius_matches_power(data, s):
    F = data.draw(fields())
    a, b = data.draw(elements(F)), data.draw(elements(F))
    fa = a.frobenius(s)
    assert fa == frobenius(a, s)
    # field automorphism
    assert (a + b).frobenius(s) == fa + b.frobenius(s)
    assert (a * b).frobenius(s) == fa * b.frobenius(s)
    assert a.frobenius(F.m) == a
    assert fa.frobenius(-s) == a


@given(st.data())
def test_int_roundtrip(data):
    F = data.draw(fields())
    v = data.draw(st.integers(0, F.order - 1))
    assert int(F.element(v)) == v


@given(fields(), seeds())
def test_matmul_matches_elementwise(F, rng):
    A = F.random_digits(rng, (3, 4))
    B = F.random_digits(rng, (4, 2))
    fast = F.matmul(A, B)
    for i in range(3):
        for j in range(2):
            acc = F.zero()
            for l in range(4):
                acc = acc + F.element(A[i, l]) * F.element(B[l, j])
            assert fast[i, j].tolist() == list(acc.coeffs)


@given(fields(), seeds())
def test_mul_matrix(F, rng):
    a = F.random_digits(rng, ())
    v = F.random_digits(rng, ())
    assert np.array_equal(v @ F.mul_matrix(a) % F.q, F.mul(v, a))


def test_large_field_inverse(rng):
    F = ExtField(3, 57)
    a = F.random(rng)
    assert a * a.inverse() == F.one()

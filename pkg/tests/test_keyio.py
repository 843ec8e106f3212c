import struct
import zlib

import pytest
from hypothesis import given, strategies as st

from rankpke import (
    CorruptionError,
    FieldVector,
    FormatError,
    Message,
    ParamError,
    SeededRng,
    TABLE1,
    decrypt,
    deserialize,
    encrypt,
    keygen,
    preset,
    serialize,
)
from rankpke.analysis import public_key_size_bytes
from rankpke.keyio import (
    KIND_PUBLIC,
    header_bytes,
    pack_digits,
    packed_len,
    payload_wire_bytes,
    unpack_digits,
)


@pytest.fixture(scope="module", params=["loidreau-demo", "mod1-demo", "mod2-demo"])
def objects(request):
    p = preset(request.param)
    rng = SeededRng(31)
    kp = keygen(p, rng)
    msg = FieldVector.random(p.field(), p.k_pub, rng)
    ct = encrypt(kp.public, msg, rng)
    return kp, ct, Message(p, msg)


def test_roundtrip_all_kinds(objects):
    kp, ct, msg = objects
    for obj in (kp.public, kp.secret, ct, msg):
        blob = serialize(obj)
        back = deserialize(blob)
        assert back == obj
        assert serialize(back) == blob


def test_deserialized_secret_decrypts(objects):
    kp, ct, msg = objects
    sk = deserialize(serialize(kp.secret))
    assert decrypt(sk, ct) == msg.m


def test_public_key_layout(objects):
    kp, _, _ = objects
    p = kp.params
    blob = serialize(kp.public)
    assert blob[:4] == b"RKC1" and blob[4] == 0
    assert len(blob) == header_bytes(p) + payload_wire_bytes(p, KIND_PUBLIC) + 4
    assert struct.unpack("<I", blob[-4:])[0] == zlib.crc32(blob[:-4])


def test_bad_magic(objects):
    blob = bytearray(serialize(objects[2]))
    blob[0] ^= 0xFF
    with pytest.raises(FormatError):
        deserialize(bytes(blob))


def test_flipped_payload_bit(objects):
    blob = bytearray(serialize(objects[1]))
    blob[len(blob) // 2] ^= 0x10
    with pytest.raises(CorruptionError):
        deserialize(bytes(blob))


@pytest.mark.parametrize("cut", [0, 3, 10, 25, -1, -5])
def test_truncation(objects, cut):
    blob = serialize(objects[0].public)
    with pytest.raises(FormatError):
        deserialize(blob[:cut])


def test_lambda_one_header_rejected(objects):
    blob = bytearray(serialize(objects[2])[:-4])
    # params block starts after magic, kind and scheme; lambda is the sixth u16
    struct.pack_into("<H", blob, 6 + 2 * 5, 1)
    blob += struct.pack("<I", zlib.crc32(bytes(blob)))
    with pytest.raises(ParamError, match="lambda >= 2"):
        deserialize(bytes(blob))


def test_trailing_bytes_rejected(objects):
    body = serialize(objects[2])[:-4] + b"\x00"
    with pytest.raises(FormatError):
        deserialize(body + struct.pack("<I", zlib.crc32(body)))


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 40), st.data())
def test_pack_roundtrip(q, count, data):
    digits = data.draw(st.lists(st.integers(0, q - 1), min_size=count, max_size=count))
    buf = pack_digits(digits, q)
    assert len(buf) == packed_len(count, q)
    assert unpack_digits(buf, count, q).tolist() == digits


def test_two_bit_trits_little_endian():
    assert pack_digits([1, 2, 0, 1], 3) == bytes([0b01_00_10_01])


def test_out_of_range_digit_rejected():
    with pytest.raises(FormatError):
        unpack_digits(bytes([0b11]), 1, 3)


@pytest.mark.parametrize("entry", TABLE1, ids=lambda e: e.name)
def test_formula_and_wire_sizes(entry):
    # the wire spends 2 bits per trit, so it is never smaller than the formula
    p = entry.params()
    assert public_key_size_bytes(p) == entry.public_key_bytes
    wire = payload_wire_bytes(p, KIND_PUBLIC)
    assert wire >= entry.public_key_bytes
    cols = p.n - p.k_pub if p.systematic else p.n
    assert wire == packed_len(p.k_pub * cols * p.m, 3)

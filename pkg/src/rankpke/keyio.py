"""Binary wire format for keys, ciphertexts and messages.

Layout (all integers little-endian)::

    magic    4 bytes  b"RKC1"
    kind     1 byte   0 public key, 1 secret key, 2 ciphertext, 3 message
    scheme   1 byte   0 loidreau, 1 mod1, 2 mod2
    params   7 x u16  q, m, n, k, l, lambda, t
    modulus  m + 1 base-q digits, packed
    payload  packed field data, one padded block per vector or matrix
    crc32    4 bytes  over every preceding byte

Digits take ceil(log2 q) bits each, filled from the least significant bit of
each byte; every block is padded with zero bits to a byte boundary.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import CorruptionError, FormatError, ParamError
from .linalg import FieldMatrix, FieldVector, SubspaceBasisQ, hstack
from .schemes import SCHEMES, Ciphertext, PublicKey, SchemeParams, SecretKey

MAGIC = b"RKC1"
KIND_PUBLIC, KIND_SECRET, KIND_CIPHERTEXT, KIND_MESSAGE = range(4)
_HEADER = struct.Struct("<4sBB7H")


@dataclass(frozen=True, eq=False)
class Message:
    """Plaintext vector tagged with the parameters it belongs to."""

    params: SchemeParams
    m: FieldVector

    def __eq__(self, other):
        return isinstance(other, Message) and self.params == other.params and self.m == other.m


# -- bit packing -------------------------------------------------------------------

def digit_bits(q: int) -> int:
    return (q - 1).bit_length()


def packed_len(count: int, q: int) -> int:
    return (count * digit_bits(q) + 7) // 8


def pack_digits(digits, q: int) -> bytes:
    d = np.asarray(digits, dtype=np.int64).reshape(-1)
    w = digit_bits(q)
    if d.size == 0:
        return b""
    bits = ((d[:, None] >> np.arange(w)) & 1).astype(np.uint8).reshape(-1)
    return np.packbits(bits, bitorder="little").tobytes()


def unpack_digits(buf: bytes, count: int, q: int) -> np.ndarray:
    w = digit_bits(q)
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    vals = bits[: count * w].reshape(count, w).astype(np.int64) @ (1 << np.arange(w))
    if (vals >= q).any():
        raise FormatError(f"digit out of range for q={q}")
    if bits[count * w:].any():
        raise FormatError("nonzero padding bits")
    return vals


class _Reader:
    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise FormatError("truncated stream")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def digits(self, count: int, q: int) -> np.ndarray:
        return unpack_digits(self.take(packed_len(count, q)), count, q)


# -- payload shapes ----------------------------------------------------------------

def _pk_block_shape(params: SchemeParams):
    k = params.k_pub
    return (k, params.n - k) if params.systematic else (k, params.n)


def _block_shapes(kind: int, params: SchemeParams):
    """Sequence of (rows, cols) field-element blocks that make up a payload."""
    n, k, lam = params.n, params.k, params.lam
    if kind == KIND_PUBLIC:
        return [_pk_block_shape(params)]
    if kind == KIND_SECRET:
        shapes = [(1, n), (1, lam), (n, n)]
        if params.scheme == "mod2":
            shapes.append((k, k))
        return shapes + [_pk_block_shape(params)]
    if kind == KIND_CIPHERTEXT:
        return [(1, n)]
    if kind == KIND_MESSAGE:
        return [(1, params.k_pub)]
    raise FormatError(f"unknown object kind {kind}")


def payload_wire_bytes(params: SchemeParams, kind: int = KIND_PUBLIC) -> int:
    """Bytes the packed payload occupies on the wire."""
    return sum(packed_len(r * c * params.m, params.q) for r, c in _block_shapes(kind, params))


def header_bytes(params: SchemeParams) -> int:
    return _HEADER.size + packed_len(params.m + 1, params.q)


# -- serialize ---------------------------------------------------------------------

def _pk_block(params, G_pub: FieldMatrix) -> np.ndarray:
    if params.systematic:
        return G_pub.data[:, params.k_pub:]
    return G_pub.data


def _kind_and_blocks(obj):
    if isinstance(obj, PublicKey):
        return KIND_PUBLIC, obj.params, obj.field, [_pk_block(obj.params, obj.G_pub)]
    if isinstance(obj, SecretKey):
        p = obj.params
        blocks = [obj.a.data, obj.V.digits, obj.P.data]
        if p.scheme == "mod2":
            blocks.append(obj.S.data)
        blocks.append(_pk_block(p, obj.G_pub))
        return KIND_SECRET, p, obj.field, blocks
    if isinstance(obj, Ciphertext):
        return KIND_CIPHERTEXT, obj.params, obj.c.field, [obj.c.data]
    if isinstance(obj, Message):
        return KIND_MESSAGE, obj.params, obj.m.field, [obj.m.data]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj) -> bytes:
    kind, p, field, blocks = _kind_and_blocks(obj)
    head = _HEADER.pack(MAGIC, kind, SCHEMES.index(p.scheme), p.q, p.m, p.n, p.k, p.l, p.lam, p.t)
    parts = [head, pack_digits(field.modulus, p.q)]
    parts += [pack_digits(b, p.q) for b in blocks]
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


# -- deserialize -------------------------------------------------------------------

def _read_header(data: bytes):
    if len(data) < _HEADER.size:
        raise FormatError("truncated stream: header incomplete")
    magic, kind, scheme, q, m, n, k, l, lam, t = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if kind > KIND_MESSAGE:
        raise FormatError(f"unknown object kind {kind}")
    if scheme >= len(SCHEMES):
        raise FormatError(f"unknown scheme id {scheme}")
    return kind, (SCHEMES[scheme], q, m, n, k, lam, l, t)


def _check_integrity(data: bytes, kind, fields):
    stored = int.from_bytes(data[-4:], "little")
    if zlib.crc32(data[:-4]) == stored:
        return
    if len(data) < _min_length(kind, fields):
        raise FormatError("truncated stream")
    raise CorruptionError("crc32 mismatch")


def _min_length(kind, fields) -> int:
    scheme, q, m, n, k, lam, l, t = fields
    try:
        params = SchemeParams(scheme, q, m, n, k, lam, l, t)
    except ParamError:
        return _HEADER.size + 4
    return header_bytes(params) + payload_wire_bytes(params, kind) + 4


def deserialize(data: bytes):
    data = bytes(data)
    kind, fields = _read_header(data)
    _check_integrity(data, kind, fields)
    scheme, q, m, n, k, lam, l, t = fields
    params = SchemeParams(scheme, q, m, n, k, lam, l, t)

    r = _Reader(data[:-4], _HEADER.size)
    modulus = tuple(int(x) for x in r.digits(m + 1, q))
    field = params.field(modulus)

    blocks = []
    for rows, cols in _block_shapes(kind, params):
        blocks.append(r.digits(rows * cols * m, q).reshape(rows, cols, m))
    if r.pos != len(r.data):
        raise FormatError(f"{len(r.data) - r.pos} trailing bytes")

    if kind == KIND_PUBLIC:
        return PublicKey(params, _rebuild_public(params, field, blocks[0]))
    if kind == KIND_CIPHERTEXT:
        return Ciphertext(params, FieldVector(field, blocks[0][0]))
    if kind == KIND_MESSAGE:
        return Message(params, FieldVector(field, blocks[0][0]))

    a = FieldVector(field, blocks[0][0])
    V = SubspaceBasisQ(field, tuple(field.element(d) for d in blocks[1][0]))
    P = FieldMatrix(field, blocks[2])
    S = FieldMatrix(field, blocks[3]) if scheme == "mod2" else None
    G_pub = _rebuild_public(params, field, blocks[-1])
    return SecretKey(params, a, P, V, G_pub, S)


def _rebuild_public(params, field, block) -> FieldMatrix:
    T = FieldMatrix(field, block)
    if not params.systematic:
        return T
    return hstack(FieldMatrix.identity(field, params.k_pub), T)


# -- files ---------------------------------------------------------------------------

def write_object(path, obj) -> int:
    blob = serialize(obj)
    with open(path, "wb") as fh:
        fh.write(blob)
    return len(blob)


def read_object(path, expect=None):
    with open(path, "rb") as fh:
        obj = deserialize(fh.read())
    if expect is not None and not isinstance(obj, expect):
        raise FormatError(f"expected {expect.__name__}, file holds {type(obj).__name__}")
    return obj

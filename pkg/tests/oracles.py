"""Brute-force references for tiny binary instances.

A vector over F_{2^m} of length n is packed into one integer, m bits per
coordinate, so subtraction is XOR and rank weight is the dimension of the
span of the n m-bit coordinates.
"""
from functools import lru_cache
from itertools import product

import numpy as np

from rankpke import FieldVector


def span_dim(words) -> int:
    basis = []
    for w in words:
        for b in basis:
            w = min(w, w ^ b)
        if w:
            basis.append(w)
    return len(basis)


@lru_cache(maxsize=None)
def rank_table(m: int, n: int) -> np.ndarray:
    mask = (1 << m) - 1
    return np.array(
        [span_dim([(v >> (m * j)) & mask for j in range(n)]) for v in range(1 << (m * n))],
        dtype=np.int8,
    )


def pack(v: FieldVector) -> int:
    m = v.field.m
    out = 0
    for j, digits in enumerate(v.data):
        out |= int(sum(int(d) << i for i, d in enumerate(digits))) << (m * j)
    return out


def unpack(field, value: int, n: int) -> FieldVector:
    m = field.m
    data = [[(value >> (m * j + i)) & 1 for i in range(m)] for j in range(n)]
    return FieldVector(field, np.array(data, dtype=np.int64))


def all_codewords(code) -> list:
    """Packed codewords of a binary-base code by enumerating all messages."""
    F = code.field
    G = code.generator
    out = []
    for coeffs in product(range(F.order), repeat=code.k):
        msg = FieldVector.from_elements(F, coeffs)
        out.append(pack(msg @ G))
    return out


def nearest(word: int, codewords: np.ndarray, ranks: np.ndarray):
    """(distance, list of codewords at that distance)."""
    d = ranks[np.bitwise_xor(codewords, word)]
    best = int(d.min())
    return best, codewords[d == best].tolist()

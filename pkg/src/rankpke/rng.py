"""Deterministic byte stream used by every sampler.

A 32-byte seed is expanded in counter mode: block ``i`` is
``SHAKE256(b"rankpke/v1" || seed || i as 8-byte little-endian)`` truncated to
4096 bytes, and the blocks are concatenated. This construction is part of the
file-format contract; changing it invalidates stored test vectors.
"""
from __future__ import annotations

import hashlib
import os

import numpy as np

SEED_BYTES = 32
_DOMAIN = b"rankpke/v1"
_BLOCK = 4096


class SeededRng:
    """Single-owner pseudorandom source with a reproducible byte stream."""

    def __init__(self, seed: bytes | None = None):
        if seed is None:
            seed = os.urandom(SEED_BYTES)
        if isinstance(seed, int):
            seed = seed.to_bytes(SEED_BYTES, "little")
        seed = bytes(seed)
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
        self.seed = seed
        self._counter = 0
        self._buf = b""
        self._pos = 0

    @classmethod
    def from_hex(cls, text: str) -> "SeededRng":
        return cls(bytes.fromhex(text))

    def _refill(self):
        block = hashlib.shake_256(
            _DOMAIN + self.seed + self._counter.to_bytes(8, "little")
        ).digest(_BLOCK)
        self._counter += 1
        self._buf = self._buf[self._pos:] + block
        self._pos = 0

    def bytes(self, n: int) -> bytes:
        while len(self._buf) - self._pos < n:
            self._refill()
        out = self._buf[self._pos:self._pos + n]
        self._pos += n
        return out

    def digits(self, q: int, size) -> np.ndarray:
        """Uniform integers in ``[0, q)`` with the given shape (rejection sampled)."""
        shape = (size,) if isinstance(size, int) else tuple(size)
        count = int(np.prod(shape, dtype=np.int64))
        if q <= 256:
            width, dtype = 1, np.uint8
        else:
            width, dtype = 4, np.dtype("<u4")
        span = 1 << (8 * width)
        bound = span - span % q
        out = np.empty(0, dtype=np.int64)
        while out.size < count:
            need = count - out.size
            # oversample a little so one round usually suffices
            raw = np.frombuffer(self.bytes(width * (need + need // 4 + 8)), dtype=dtype)
            raw = raw[raw < bound].astype(np.int64) % q
            out = np.concatenate([out, raw[:need]])
        return out.reshape(shape)

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        nbytes = (n.bit_length() + 7) // 8 + 1
        span = 1 << (8 * nbytes)
        bound = span - span % n
        while True:
            v = int.from_bytes(self.bytes(nbytes), "little")
            if v < bound:
                return v % n

    def spawn(self, label) -> "SeededRng":
        """Independent child stream, keyed by this seed and ``label``."""
        tag = str(label).encode()
        return SeededRng(hashlib.sha256(_DOMAIN + b"/spawn/" + self.seed + tag).digest())

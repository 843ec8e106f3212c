"""Arithmetic in F_q (q prime) and its degree-m extension F_{q^m}.

Elements are stored as length-m digit vectors (lowest degree first). Bulk
operations work on numpy arrays whose last axis has length m, so a vector of
n elements is an ``(n, m)`` array and a matrix is ``(rows, cols, m)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, FieldMismatch, ParamError


# -- polynomials over F_q, as lists of ints (lowest degree first) ------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, q):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)]
    return _trim(out)


def poly_mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def poly_divmod(a, b, q):
    a, b = _trim(a), _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], q - 2, q)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        c = rem[-1] * inv_lead % q
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - c * y) % q
        rem = _trim(rem)
    return _trim(quot), rem


def poly_gcd(a, b, q):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b, q)[1]
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [c * inv % q for c in a]
    return a


def poly_powmod(base, e, mod, q):
    result, base = [1], poly_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, q), mod, q)[1]
        base = poly_divmod(poly_mul(base, base, q), mod, q)[1]
        e >>= 1
    return result


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def is_irreducible(f, q: int) -> bool:
    """Ben-Or test: f is irreducible iff gcd(x^{q^i} - x, f) = 1 for i <= deg/2."""
    f = _trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if f[0] == 0:
        return False
    h = [0, 1]
    for _ in range(deg // 2):
        h = poly_powmod(h, q, f, q)
        if len(poly_gcd(poly_sub(h, [0, 1], q), f, q)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(q: int, m: int) -> tuple:
    """Smallest monic irreducible of degree m, ordering by sum(c_i q^i)."""
    for v in range(q ** m):
        low = [(v // q ** i) % q for i in range(m)]
        if m > 1 and low[0] == 0:
            continue
        if is_irreducible(low + [1], q):
            return tuple(low + [1])
    raise ParamError(f"no irreducible polynomial of degree {m} over F_{q}")


# -- the extension field -----------------------------------------------------

class ExtField:
    """F_{q^m} = F_q[x]/(modulus). Immutable; compare by (q, m, modulus)."""

    def __init__(self, q: int, m: int, modulus=None):
        if not is_prime(q):
            raise ParamError(f"q={q} is not prime")
        if m < 1:
            raise ParamError("m must be at least 1")
        if modulus is None:
            modulus = default_modulus(q, m)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ParamError("modulus must be monic of degree m")
        if not is_irreducible(list(modulus), q):
            raise ParamError(f"modulus {modulus} is reducible over F_{q}")
        self.q, self.m, self.modulus = q, m, modulus
        self.order = q ** m

        # reduce[d] = x^d mod modulus, for d < 2m - 1
        red = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        cur = np.zeros(m, dtype=np.int64)
        cur[0] = 1
        tail = np.array(modulus[:m], dtype=np.int64)
        for d in range(red.shape[0]):
            red[d] = cur
            top = cur[-1]
            cur = np.roll(cur, 1)
            cur[0] = 0
            cur = (cur - top * tail) % q
        self._reduce = red.astype(np.float64)
        idx = np.add.outer(np.arange(m), np.arange(m))
        # mul_tensor[i, j*m + k]: coefficient k of x^(i+j)
        self._mul_tensor = red[idx].reshape(m, m * m).astype(np.float64)
        self._tensor2 = red[idx].reshape(m * m, m).astype(np.float64)
        self._frob = {0: np.eye(m)}
        base = np.stack([self._pow_digits(np.eye(m, dtype=np.int64)[i], q) for i in range(m)])
        self._frob[1] = base.astype(np.float64)

    # identity / hashing
    def _key(self):
        return (self.q, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, ExtField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ExtField(q={self.q}, m={self.m}, modulus={self.modulus})"

    # -- array kernels -------------------------------------------------------
    def _mod(self, x):
        return np.rint(x).astype(np.int64) % self.q

    def mul(self, a, b):
        """Elementwise product of digit arrays (broadcasting over leading axes)."""
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        return self._reduce_products(a[..., :, None] * b[..., None, :])

    def _reduce_products(self, outer):
        # outer[..., i, j] holds a_i * b_j (or sums of such); contract with x^(i+j) mod f
        m = self.m
        lead = outer.shape[:-2]
        flat = np.ascontiguousarray(outer).reshape(lead + (m * m,))
        return self._mod(flat @ self._tensor2)

    def mul_matrix(self, a):
        """Matrix M(a) with ``v @ M(a) == v * a``; batched over leading axes of a."""
        a = np.asarray(a, dtype=np.float64)
        out = (a @ self._mul_tensor).reshape(a.shape[:-1] + (self.m, self.m))
        return out % self.q

    def scaled_rows(self, factors, row):
        """Unreduced float products: out[i, j] = factors[i] * row[j]."""
        m = self.m
        k, c = factors.shape[0], row.shape[0]
        mats = np.asarray(factors, dtype=np.float64) @ self._mul_tensor
        mats = mats.reshape(k, m, m).transpose(1, 0, 2).reshape(m, k * m)
        out = np.asarray(row, dtype=np.float64) @ mats
        return out.reshape(c, k, m).transpose(1, 0, 2)

    def matmul(self, A, B):
        """Product of matrices over F_{q^m}: (r, l, m) x (l, c, m) -> (r, c, m)."""
        A = np.asarray(A)
        B = np.asarray(B)
        r, l, m = A.shape
        c = B.shape[1]
        if B.shape[0] != l:
            raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
        if r == 0 or c == 0 or l == 0:
            return np.zeros((r, c, m), dtype=np.int64)
        Bf = B.reshape(l, c * m).astype(np.float64)
        out = np.empty((r, c, m), dtype=np.int64)
        step = max(1, 4_000_000 // max(1, c * m * m))
        for s in range(0, r, step):
            Ablk = A[s:s + step].transpose(0, 2, 1).reshape(-1, l).astype(np.float64)
            prod = Ablk @ Bf
            rows = prod.shape[0] // m
            prod = prod.reshape(rows, m, c, m).transpose(0, 2, 1, 3)
            out[s:s + step] = self._reduce_products(prod)
        return out

    def frob_matrix(self, s: int):
        s %= self.m
        if s not in self._frob:
            prev = self.frob_matrix(s - 1)
            self._frob[s] = (prev @ self._frob[1]) % self.q
        return self._frob[s]

    def frob(self, a, s: int = 1):
        """Entrywise a^(q^s) for a digit array; s may be negative."""
        s %= self.m
        a = np.asarray(a)
        if s == 0:
            return a.astype(np.int64, copy=True)
        return self._mod(a.astype(np.float64) @ self.frob_matrix(s))

    def _pow_digits(self, a, e: int):
        result = np.zeros(self.m, dtype=np.int64)
        result[0] = 1
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv_digits(self, a):
        """Inverse via the norm: a^-1 = a^(q + ... + q^(m-1)) / N(a)."""
        a = np.asarray(a, dtype=np.int64)
        if not a.any():
            raise DivisionByZero("inverse of zero in F_{q^m}")
        table = self._inverse_table()
        if table is not None:
            return table[int(a @ self._place_values)].copy()
        return self._inv_batch(a)

    def _inv_batch(self, a):
        # beta holds a^(1 + q + ... + q^(i-1)); doubling via beta_i^(q^i) * beta_i
        beta, i = a, 1
        for bit in bin(self.m - 1)[3:]:
            beta = self.mul(self.frob(beta, i), beta)
            i *= 2
            if bit == "1":
                beta = self.mul(self.frob(beta, 1), a)
                i += 1
        gamma = self.frob(beta, 1)
        norm = self.mul(a, gamma)[..., 0]
        scale = np.array([pow(int(x), self.q - 2, self.q) for x in np.ravel(norm)]).reshape(np.shape(norm))
        return gamma * scale[..., None] % self.q

    _TABLE_LIMIT = 1 << 12

    def _inverse_table(self):
        # small fields get a lookup table; the decoder inverts a lot of pivots
        if self.order > self._TABLE_LIMIT:
            return None
        if not hasattr(self, "_inv_table"):
            self._place_values = self.q ** np.arange(self.m, dtype=np.int64)
            digits = (np.arange(self.order)[:, None] // self._place_values) % self.q
            table = np.zeros_like(digits)
            table[1:] = self._inv_batch(digits[1:])
            self._inv_table = table
        return self._inv_table

    # -- convenience constructors -------------------------------------------
    def element(self, value) -> "FieldElement":
        """Build an element from an int (base-q digits), digit sequence or element."""
        if isinstance(value, FieldElement):
            self._check(value.field)
            return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            digits = []
            for _ in range(self.m):
                v, d = divmod(v, self.q)
                digits.append(d)
            return FieldElement(self, tuple(digits))
        digits = tuple(int(d) % self.q for d in value)
        if len(digits) != self.m:
            raise ValueError(f"expected {self.m} digits, got {len(digits)}")
        return FieldElement(self, digits)

    def zero(self):
        return FieldElement(self, (0,) * self.m)

    def one(self):
        return FieldElement(self, (1,) + (0,) * (self.m - 1))

    def gen(self):
        """The class of x, i.e. a root of the modulus."""
        if self.m == 1:
            return self.element([(-self.modulus[0]) % self.q])
        return self.element([0, 1] + [0] * (self.m - 2))

    def random(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(int(d) for d in rng.digits(self.q, self.m)))

    def random_digits(self, rng, shape):
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return rng.digits(self.q, shape + (self.m,))

    def _check(self, other):
        if other != self:
            raise FieldMismatch(f"{other!r} is not {self!r}")

    def elements(self):
        """Every element, in integer order. Only sensible for tiny fields."""
        for v in range(self.order):
            yield self.element(v)


@dataclass(frozen=True)
class FieldElement:
    field: ExtField
    coeffs: tuple

    @property
    def digits(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __int__(self):
        return sum(c * self.field.q ** i for i, c in enumerate(self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def _wrap(self, digits):
        return FieldElement(self.field, tuple(int(d) for d in digits))

    def _other(self, other):
        if isinstance(other, (int, np.integer)):
            return self.field.element([int(other) % self.field.q] + [0] * (self.field.m - 1))
        if not isinstance(other, FieldElement):
            return NotImplemented
        self.field._check(other.field)
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        q = self.field.q
        return FieldElement(self.field, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        q = self.field.q
        return FieldElement(self.field, tuple((-a) % q for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.field.mul(self.digits, other.digits))

    __rmul__ = __mul__

    def inverse(self):
        return self._wrap(self.field.inv_digits(self.coeffs))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field._pow_digits(self.digits, e))

    def frobenius(self, s: int = 1):
        return self._wrap(self.field.frob(self.digits, s))

    def __repr__(self):
        return f"FieldElement({list(self.coeffs)})"


# -- functional surface ------------------------------------------------------

def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    a.field._check(b.field)
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a.field._check(b.field)
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, s: int) -> FieldElement:
    """a^(q^s), computed by square-and-multiply; negative s inverts the map."""
    f = a.field
    return a ** (f.q ** (s % f.m))


def fe_random(field: ExtField, rng) -> FieldElement:
    return field.random(rng)

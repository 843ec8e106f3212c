"""Loidreau's cryptosystem and its two subcode / column-rank modifications.

``loidreau`` publishes G P^-1 in full. ``mod1`` hides a random subcode of the
Gabidulin code, ``mod2`` adds a matrix of small F_q-column rank to the
generator; both publish a systematic generator matrix [I | T].
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import numpy as np

from .errors import DecodingFailure, NoSolution, ParamError, SamplingFailure
from .field import ExtField
from .gabidulin import GabidulinCode, decode, parity_check_matrix, sample_generator_vector
from .linalg import (
    FieldMatrix,
    FieldVector,
    SubspaceBasisQ,
    column_rank_q,
    kernel_basis,
    random_full_rank_fq,
    rank_weight,
    rref,
    sample_subspace,
    systematic_form,
    vstack,
)

SCHEMES = ("loidreau", "mod1", "mod2")
MAX_ATTEMPTS = 100


def public_weight(scheme: str, n: int, k: int, lam: int, l: int) -> int:
    if scheme == "mod2":
        return (n - k - 2 * l) // (2 * lam)
    return (n - k) // (2 * lam)


@dataclass(frozen=True)
class SchemeParams:
    scheme: str
    q: int
    m: int
    n: int
    k: int
    lam: int = 2
    l: int = 0
    t: int | None = None

    def __post_init__(self):
        if self.t is None:
            if self.scheme in SCHEMES and self.lam > 0:
                object.__setattr__(self, "t", public_weight(self.scheme, self.n, self.k, self.lam, self.l))
            else:
                object.__setattr__(self, "t", 0)
        self.validate()

    def validate(self):
        s, n, k, lam, l, t = self.scheme, self.n, self.k, self.lam, self.l, self.t
        if s not in SCHEMES:
            raise ParamError(f"unknown scheme {s!r}; expected one of {SCHEMES}")
        if self.m < 1 or self.q < 2:
            raise ParamError("q and m must be positive")
        if n > self.m:
            raise ParamError(f"n <= m violated: n={n}, m={self.m}")
        if not 1 <= k < n:
            raise ParamError(f"1 <= k < n violated: k={k}, n={n}")
        if lam < 2:
            raise ParamError(
                f"lambda >= 2 violated (lambda={lam}): with lambda = 1 the scrambler is "
                "defined over F_q and the public code stays Frobenius-weak"
            )
        if lam > self.m:
            raise ParamError(f"lambda <= m violated: lambda={lam}, m={self.m}")
        expected_t = public_weight(s, n, k, lam, l)
        if t != expected_t:
            raise ParamError(f"t must equal {expected_t} for these parameters, got {t}")
        if t < 1:
            raise ParamError(f"t >= 1 violated: parameters give t={t}")
        if s == "loidreau" and l != 0:
            raise ParamError("l must be 0 for the loidreau scheme")
        if s == "mod1" and not (max(1, k - n // 2) <= l < k):
            raise ParamError(f"mod1 requires max(1, k - floor(n/2)) <= l < k; got l={l}")
        if s == "mod2":
            if l < 1:
                raise ParamError(f"mod2 requires l >= 1; got l={l}")
            if l + lam * t > (n - k) // 2:
                raise ParamError(
                    f"mod2 requires l + lambda*t <= floor((n-k)/2): {l} + {lam}*{t} > {(n - k) // 2}"
                )

    @property
    def k_pub(self) -> int:
        """Rows of the public generator matrix (message length)."""
        return self.k - self.l if self.scheme == "mod1" else self.k

    @property
    def systematic(self) -> bool:
        return self.scheme != "loidreau"

    def field(self, modulus=None) -> ExtField:
        return _field(self.q, self.m, tuple(modulus) if modulus is not None else None)


_FIELDS: dict = {}


def _field(q, m, modulus):
    key = (q, m, modulus)
    if key not in _FIELDS:
        _FIELDS[key] = ExtField(q, m, modulus)
    return _FIELDS[key]


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: SchemeParams
    G_pub: FieldMatrix

    @property
    def field(self) -> ExtField:
        return self.G_pub.field

    @property
    def t(self) -> int:
        return self.params.t

    def __eq__(self, other):
        return isinstance(other, PublicKey) and self.params == other.params and self.G_pub == other.G_pub


@dataclass(frozen=True, eq=False)
class SecretKey:
    params: SchemeParams
    a: FieldVector
    P: FieldMatrix
    V: SubspaceBasisQ
    G_pub: FieldMatrix
    S: FieldMatrix | None = None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def field(self) -> ExtField:
        return self.a.field

    def _cached(self, name, compute):
        if name not in self._cache:
            self._cache[name] = compute()
        return self._cache[name]

    @property
    def code(self) -> GabidulinCode:
        return self._cached("code", lambda: GabidulinCode(self.a, self.params.k))

    @property
    def P_inv(self) -> FieldMatrix:
        return self._cached("P_inv", self.P.inverse)

    @property
    def S_inv(self) -> FieldMatrix:
        return self._cached("S_inv", self.S.inverse)

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.params, self.G_pub)

    def mask_matrix(self) -> FieldMatrix:
        """mod2 only: M = S^-1 G_pub P - G."""
        if self.params.scheme != "mod2":
            raise ValueError("only mod2 keys carry a low column-rank mask")
        return self.S_inv @ self.G_pub @ self.P - self.code.generator

    def __eq__(self, other):
        if not isinstance(other, SecretKey):
            return False
        same_s = (self.S is None and other.S is None) or (
            self.S is not None and other.S is not None and self.S == other.S
        )
        return (
            self.params == other.params
            and self.a == other.a
            and self.P == other.P
            and self.V == other.V
            and self.G_pub == other.G_pub
            and same_s
        )


@dataclass(frozen=True)
class KeyPair:
    public: PublicKey
    secret: SecretKey

    @property
    def params(self):
        return self.public.params


@dataclass(frozen=True, eq=False)
class Ciphertext:
    params: SchemeParams
    c: FieldVector

    def __eq__(self, other):
        return isinstance(other, Ciphertext) and self.params == other.params and self.c == other.c


# -- samplers --------------------------------------------------------------------

def _sample_P_and_inverse(field, n, V: SubspaceBasisQ, rng):
    if V.dim < 2:
        raise ParamError("the scrambling subspace needs dimension >= 2")
    for _ in range(MAX_ATTEMPTS):
        coeffs = rng.digits(field.q, (n, n, V.dim))
        P = FieldMatrix(field, V.combine(coeffs))
        try:
            return P, P.inverse()
        except NoSolution:
            continue
    raise SamplingFailure("no invertible scrambler found")


def sample_P(field: ExtField, n: int, V: SubspaceBasisQ, rng) -> FieldMatrix:
    """Invertible n x n matrix with every entry in the F_q-span of V."""
    return _sample_P_and_inverse(field, n, V, rng)[0]


def sample_rank_error(field: ExtField, n: int, t: int, rng) -> FieldVector:
    """Vector of rank weight exactly t: a t-dim support times a full-rank F_q matrix."""
    if not 1 <= t <= min(field.m, n):
        raise ParamError(f"error weight t={t} outside [1, min(m, n)]")
    beta = sample_subspace(field, t, rng)
    E = random_full_rank_fq(field.q, t, n, rng)
    return FieldVector(field, beta.combine(E.T))


def sample_low_colrank_matrix(field: ExtField, k: int, n: int, l: int, rng) -> FieldMatrix:
    """k x n matrix over F_{q^m} of F_q-column rank exactly l."""
    if not 1 <= l <= min(k * field.m, n):
        raise ParamError(f"column rank l={l} outside [1, min(k*m, n)]")
    for _ in range(MAX_ATTEMPTS):
        C = FieldMatrix.random(field, k, l, rng)
        if column_rank_q(C) == l:
            break
    else:
        raise SamplingFailure("no k x l matrix of full column rank over F_q found")
    E = random_full_rank_fq(field.q, l, n, rng)
    data = np.einsum("iud,uj->ijd", C.data, E) % field.q
    return FieldMatrix(field, data)


# -- key generation ----------------------------------------------------------------

def keygen(params: SchemeParams, rng, modulus=None) -> KeyPair:
    params.validate()
    field = params.field(modulus)
    return _keygen(params, field, rng, params.l)


def _keygen(params, field, rng, l):
    n, k = params.n, params.k
    code = GabidulinCode(sample_generator_vector(field, n, rng), k)
    V = sample_subspace(field, params.lam, rng)
    S = None

    if params.scheme == "loidreau":
        P, P_inv = _sample_P_and_inverse(field, n, V, rng)
        G_pub = code.generator @ P_inv

    elif params.scheme == "mod1":
        H = parity_check_matrix(code)
        for _ in range(MAX_ATTEMPTS):
            A = FieldMatrix.random(field, l, n, rng)
            G_sub = kernel_basis(vstack(A, H))
            if G_sub.rows == k - l:
                break
        else:
            raise SamplingFailure("H_sub never reached full rank")
        for _ in range(MAX_ATTEMPTS):
            P, P_inv = _sample_P_and_inverse(field, n, V, rng)
            G_pub = systematic_form(G_sub @ P_inv)
            if G_pub is not None:
                break
        else:
            raise SamplingFailure("leading block of G_sub P^-1 stayed singular")

    else:
        G = code.generator
        for _ in range(MAX_ATTEMPTS):
            M = sample_low_colrank_matrix(field, k, n, l, rng) if l else FieldMatrix.zeros(field, k, n)
            G_M = G + M
            if rref(G_M)[1] == k:
                break
        else:
            raise SamplingFailure("G + M never reached full rank")
        for _ in range(MAX_ATTEMPTS):
            P, P_inv = _sample_P_and_inverse(field, n, V, rng)
            X = G_M @ P_inv
            G_pub = systematic_form(X)
            if G_pub is not None:
                break
        else:
            raise SamplingFailure("leading block of G_M P^-1 stayed singular")
        X1 = FieldMatrix(field, X.data[:, :k])
        S = X1.inverse()
        cache = {"P_inv": P_inv, "S_inv": X1, "code": code}
        return KeyPair(PublicKey(params, G_pub), SecretKey(params, code.a, P, V, G_pub, S, cache))

    cache = {"P_inv": P_inv, "code": code}
    return KeyPair(PublicKey(params, G_pub), SecretKey(params, code.a, P, V, G_pub, S, cache))


# -- encryption ----------------------------------------------------------------------

def encrypt(pk: PublicKey, msg: FieldVector, rng) -> Ciphertext:
    if len(msg) != pk.G_pub.rows:
        raise ValueError(f"message length {len(msg)} != {pk.G_pub.rows}")
    e = sample_rank_error(pk.field, pk.params.n, pk.t, rng)
    return Ciphertext(pk.params, msg @ pk.G_pub + e)


def decrypt(sk: SecretKey, ct: Ciphertext) -> FieldVector:
    """Recover the plaintext; raises DecodingFailure on any inconsistency."""
    params = sk.params
    c = ct.c
    if len(c) != params.n:
        raise ValueError(f"ciphertext length {len(c)} != n={params.n}")
    c_scr = c @ sk.P
    if params.scheme == "loidreau":
        _, _, msg = decode(sk.code, c_scr)
    elif params.scheme == "mod1":
        _, e_scr, _ = decode(sk.code, c_scr)
        e = e_scr @ sk.P_inv
        msg = (c - e)[: params.k_pub]
    else:
        _, _, mS = decode(sk.code, c_scr)
        msg = mS @ sk.S_inv
    residue = c - msg @ sk.G_pub
    if rank_weight(residue) > params.t:
        raise DecodingFailure("re-encryption check failed: residual error exceeds t")
    return msg

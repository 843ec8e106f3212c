"""Structural distinguishers, white-box attack checks, cost estimates and sizes.

The white-box checks take the secret key, recover the triple (gamma, g, h)
that a Frobenius-chain attack against Loidreau's scheme targets, and test
the code containments that decide whether such an attack goes through.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParamError, Unsupported
from .gabidulin import GabidulinCode, dual_generator_vector, moore_matrix
from .linalg import (
    FieldMatrix,
    FieldVector,
    LinearCode,
    code_dual,
    code_frobenius,
    code_intersection,
    code_sum,
    rank_weight,
    rref,
    solve_fq,
    vstack,
)
from .registry import TABLE1, ParamRegistryEntry
from .schemes import KeyPair, SchemeParams, SecretKey, _keygen


# -- Frobenius distinguisher -------------------------------------------------------

def frobenius_sum_dim(C: LinearCode, s: int) -> int:
    """dim(C + C^[1] + ... + C^[s])."""
    if s < 0:
        raise ValueError("s must be non-negative")
    gens = [C.basis.frobenius(i) for i in range(s + 1)]
    return rref(vstack(*gens))[1]


def distinguish_gabidulin(C: LinearCode) -> str:
    if frobenius_sum_dim(C, 1) <= C.dim + 1:
        return "gabidulin-like"
    return "random-like"


def public_code(pk) -> LinearCode:
    G = pk.G_pub if hasattr(pk, "G_pub") else pk
    return LinearCode.from_matrix(G)


# -- white-box decomposition -------------------------------------------------------

@dataclass(frozen=True)
class WhiteboxDecomposition:
    gamma: object
    alpha: object
    P0: np.ndarray
    P1: np.ndarray
    b: FieldVector
    g: FieldVector
    h: FieldVector

    @property
    def field(self):
        return self.b.field

    def mixed(self, i: int, j: int) -> FieldVector:
        """g^[i] + gamma^[j] h^[i]."""
        gam = self.gamma.frobenius(j)
        return self.g.frobenius(i) + self.h.frobenius(i) * gam


def whitebox_decompose(sk: SecretKey) -> WhiteboxDecomposition:
    """Normalize V = <alpha, beta> to <1, gamma> and split (P / alpha)^T = P0 + gamma P1."""
    if sk.V.dim != 2:
        raise Unsupported(f"white-box decomposition needs lambda = 2, key has {sk.V.dim}")
    field = sk.field
    alpha, beta = sk.V.elements
    alpha_inv = alpha.inverse()
    gamma = alpha_inv * beta
    scaled = field.mul(sk.P.data, alpha_inv.digits).transpose(1, 0, 2)
    basis = np.stack([field.one().digits, gamma.digits])
    n = sk.params.n
    coords = solve_fq(basis, scaled.reshape(-1, field.m), field.q).reshape(n, n, 2)
    P0, P1 = coords[..., 0], coords[..., 1]
    b = dual_generator_vector(GabidulinCode(sk.a, sk.params.k))
    q = field.q
    g = FieldVector(field, np.einsum("id,ij->jd", b.data, P0) % q)
    h = FieldVector(field, np.einsum("id,ij->jd", b.data, P1) % q)
    return WhiteboxDecomposition(gamma, alpha, P0, P1, b, g, h)


def check_assumption1(w: WhiteboxDecomposition, n: int, k: int, dim: int | None = None) -> bool:
    """G_{n,d}(g) ∩ G_{n,d}(h) = {0} and both rank weights >= d, with d = n - k + 2 by default.

    The two codes can only meet trivially when 2d <= n, so for k < n/2 + 2 the
    default form is false by dimension count alone. ``dim`` lets callers test
    weaker variants such as d = n - k + 1.
    """
    d = n - k + 2 if dim is None else dim
    if rank_weight(w.g) < d or rank_weight(w.h) < d:
        return False
    Cg = LinearCode.from_matrix(moore_matrix(w.g, d))
    Ch = LinearCode.from_matrix(moore_matrix(w.h, d))
    return code_sum(Cg, Ch).dim == Cg.dim + Ch.dim


def dual_span_code(w: WhiteboxDecomposition, n: int, k: int) -> LinearCode:
    """The code spanned by g^[i] + gamma h^[i], 0 <= i <= n - k - 1."""
    vecs = [w.mixed(i, 0) for i in range(n - k)]
    return LinearCode.from_matrix(FieldMatrix.from_vectors(w.field, vecs))


def chain_target(w: WhiteboxDecomposition, n: int, k: int) -> LinearCode:
    """span{g^[r] + gamma^[r] h^[r], g^[r+1] + gamma^[1] h^[r+1]} with r = n - k - 1."""
    r = n - k - 1
    vecs = [w.mixed(r, r), w.mixed(r + 1, 1)]
    return LinearCode.from_matrix(FieldMatrix.from_vectors(w.field, vecs))


def cc_chain_intersection(C_pub: LinearCode, depth: int | None = None) -> LinearCode:
    """Intersection over 0 <= i <= depth of D^[i] + D^[i+1], where D is the dual of C_pub."""
    n = C_pub.n
    if depth is None:
        depth = n - C_pub.dim - 1
    if depth < 0:
        raise ValueError("depth must be non-negative")
    D = code_dual(C_pub)
    first = code_sum(D, code_frobenius(D, 1))
    if first.dim == n:
        return first
    # (S^[i])^perp = (S^perp)^[i], so the intersection is the dual of a Frobenius sum
    orth = code_dual(first)
    gens = [orth.basis.frobenius(i) for i in range(depth + 1)]
    return code_dual(LinearCode(C_pub.field, n, vstack(*gens)))


# -- per-scheme reports ------------------------------------------------------------

@dataclass(frozen=True)
class LoidreauWeaknessReport:
    assumption1: bool
    chain_dim: int
    matches_target: bool

    @property
    def vulnerable(self):
        return self.chain_dim == 2 and self.matches_target


def demonstrate_loidreau_weakness(kp: KeyPair) -> LoidreauWeaknessReport:
    p = kp.params
    if p.scheme != "loidreau":
        raise Unsupported("the weakness demonstration applies to loidreau keys")
    w = whitebox_decompose(kp.secret)
    chain = cc_chain_intersection(public_code(kp.public))
    return LoidreauWeaknessReport(
        assumption1=check_assumption1(w, p.n, p.k),
        chain_dim=chain.dim,
        matches_target=chain == chain_target(w, p.n, p.k),
    )


@dataclass(frozen=True)
class Mod1Report:
    n: int
    dual_dim: int
    frobenius_sum_dim: int
    shape_ok: bool

    @property
    def resistant(self):
        return self.shape_ok and self.frobenius_sum_dim == self.n


def verify_mod1_resistance(kp: KeyPair) -> Mod1Report:
    p = kp.params
    if p.scheme != "mod1":
        raise Unsupported("mod1 resistance check needs a mod1 key")
    D = code_dual(public_code(kp.public))
    return Mod1Report(
        n=p.n,
        dual_dim=D.dim,
        frobenius_sum_dim=frobenius_sum_dim(D, 1),
        shape_ok=2 * (p.n - p.k + p.l) >= p.n,
    )


def mod1_shape_ok(n: int, k: int, l: int) -> bool:
    return 2 * (n - k + l) >= n


@dataclass(frozen=True)
class Mod2Report:
    mask_rank: int
    chain_dim: int
    target_contained: bool
    dual_overlap_dim: int
    overlap_bound: int

    @property
    def resistant(self):
        return not self.target_contained


def verify_mod2_resistance(kp: KeyPair) -> Mod2Report:
    p = kp.params
    if p.scheme != "mod2":
        raise Unsupported("mod2 resistance check needs a mod2 key")
    if p.lam != 2:
        raise Unsupported("the white-box mod2 check is defined for lambda = 2")
    sk = kp.secret
    w = whitebox_decompose(sk)
    C_pub = public_code(kp.public)
    chain = cc_chain_intersection(C_pub)
    target = chain_target(w, p.n, p.k)
    contained = code_sum(chain, target).dim == chain.dim
    mask_rank = rref(sk.mask_matrix())[1]
    overlap = code_intersection(code_dual(C_pub), dual_span_code(w, p.n, p.k))
    return Mod2Report(
        mask_rank=mask_rank,
        chain_dim=chain.dim,
        target_contained=contained,
        dual_overlap_dim=overlap.dim,
        overlap_bound=p.n - p.k - mask_rank,
    )


def degenerate_mod2_keypair(params: SchemeParams, rng) -> KeyPair:
    """mod2-shaped key with a zero mask (l = 0), i.e. systematized Loidreau."""
    if params.scheme != "mod2":
        raise ParamError("degenerate keys are built from mod2 parameters")
    return _keygen(params, params.field(), rng, 0)


# -- generic attack costs ----------------------------------------------------------

@dataclass(frozen=True)
class AttackCostReport:
    log2_combinatorial: float
    log2_combinatorial_branches: tuple
    log2_algebraic: float | None
    claimed_level: int | None = None

    @property
    def log2_min(self) -> float:
        vals = [self.log2_combinatorial]
        if self.log2_algebraic is not None:
            vals.append(self.log2_algebraic)
        return min(vals)


def _attack_shape(params):
    """(q, m, n, k, t) of the code an attacker decodes: the public code."""
    k = params.k_pub if hasattr(params, "k_pub") else params.k
    return params.q, params.m, params.n, k, params.t


def combinatorial_attack_branches(params) -> tuple:
    q, m, n, k, t = _attack_shape(params)
    base = 3 * math.log2(n - k) + 3 * math.log2(m)
    first = base + t * ((k * m) // n) * math.log2(q)
    second = base + (t - 1) * (((k + 1) * m) // n) * math.log2(q)
    return first, second


def combinatorial_attack_cost(params) -> float:
    return min(combinatorial_attack_branches(params))


def algebraic_attack_cost(params) -> float | None:
    """log2 cost of the algebraic RSD attack, or None when it does not apply."""
    q, m, n, k, t = _attack_shape(params)
    e = -((n + 1 - (t + 1) * (k + 1)) // t)  # ceil(((t+1)(k+1) - (n+1)) / t)
    if e > k:
        return None
    return 3 * math.log2(t) + 3 * math.log2(k) + t * e * math.log2(q)


def attack_costs(params, claimed_level=None) -> AttackCostReport:
    return AttackCostReport(
        log2_combinatorial=combinatorial_attack_cost(params),
        log2_combinatorial_branches=combinatorial_attack_branches(params),
        log2_algebraic=algebraic_attack_cost(params),
        claimed_level=claimed_level,
    )


# -- sizes and rates ---------------------------------------------------------------

def public_key_symbols(params) -> int:
    """Number of F_q symbols in the published matrix."""
    n, k, l, m = params.n, params.k, params.l, params.m
    if params.scheme == "mod1":
        return (k - l) * (n - k + l) * m
    if params.scheme == "mod2":
        return k * (n - k) * m
    return k * n * m


def public_key_size_bytes(params) -> int:
    """symbols * log2(q) / 8 rounded to the nearest byte, decided exactly."""
    N = public_key_symbols(params)
    q = params.q
    est = int(round(N * math.log2(q) / 8))
    power = q ** N
    # B = round(x / 8) with x = N log2 q  <=>  2^(8B - 4) <= q^N < 2^(8B + 4)
    for B in (est - 1, est, est + 1):
        if B >= 1 and (1 << (8 * B - 4)) <= power < (1 << (8 * B + 4)):
            return B
    raise ArithmeticError("size rounding failed")


def information_rate(params) -> Fraction:
    if params.scheme == "mod1":
        return Fraction(params.k - params.l, params.n)
    return Fraction(params.k, params.n)


def registry_report(entries=TABLE1):
    rows = []
    for e in entries:
        p = e.params()
        size = public_key_size_bytes(p)
        rate = information_rate(p)
        costs = attack_costs(p, e.security_bits)
        rows.append({
            "name": e.name,
            "scheme": e.scheme,
            "q": e.q, "m": e.m, "n": e.n, "k": e.k, "l": e.l, "lambda": e.lam, "t": p.t,
            "size_bytes": size,
            "table_size_bytes": e.public_key_bytes,
            "size_matches": size == e.public_key_bytes,
            "information_rate": round(float(rate), 2),
            "table_rate": e.information_rate,
            "rate_matches": round(float(rate), 2) == e.information_rate,
            "log2_combinatorial": costs.log2_combinatorial_branches,
            "log2_algebraic": costs.log2_algebraic,
            "log2_min": costs.log2_min,
            "security_bits": e.security_bits,
        })
    return rows


# -- subspace intersection probability ----------------------------------------------

def trivial_intersection_probability(n: int, k: int, l: int, m: int, q: int) -> Fraction:
    """Exact probability that a uniform l-dim subspace meets a fixed k-dim code trivially."""
    if k + l >= n:
        raise ParamError(f"need k + l < n, got k={k}, l={l}, n={n}")
    Q = q ** m
    out = Fraction(1)
    for i in range(l):
        out *= Fraction(Q ** n - Q ** (k + i), Q ** n - Q ** i)
    return out


def trivial_intersection_prob_bound(n: int, k: int, l: int, m: int, q: int, digits: int = 50):
    """The same probability as a Decimal carrying ``digits`` significant digits."""
    p = trivial_intersection_probability(n, k, l, m, q)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        return decimal.Decimal(p.numerator) / decimal.Decimal(p.denominator)


def sample_trivial_intersection_rate(field, n, k, l, trials, rng) -> float:
    """Monte Carlo frequency of C ∩ V = {0} for a fixed random C (dim k) and uniform V (dim l)."""
    C = LinearCode.random(field, n, k, rng)
    hits = 0
    for _ in range(trials):
        while True:
            V = FieldMatrix.random(field, l, n, rng)
            if rref(V)[1] == l:
                break
        if rref(vstack(C.basis, V))[1] == k + l:
            hits += 1
    return hits / trials


__all__ = [
    "AttackCostReport",
    "LoidreauWeaknessReport",
    "Mod1Report",
    "Mod2Report",
    "ParamRegistryEntry",
    "WhiteboxDecomposition",
    "algebraic_attack_cost",
    "attack_costs",
    "cc_chain_intersection",
    "chain_target",
    "check_assumption1",
    "combinatorial_attack_branches",
    "combinatorial_attack_cost",
    "degenerate_mod2_keypair",
    "demonstrate_loidreau_weakness",
    "distinguish_gabidulin",
    "dual_span_code",
    "frobenius_sum_dim",
    "information_rate",
    "public_code",
    "public_key_size_bytes",
    "registry_report",
    "trivial_intersection_prob_bound",
    "trivial_intersection_probability",
    "sample_trivial_intersection_rate",
    "verify_mod1_resistance",
    "verify_mod2_resistance",
    "whitebox_decompose",
]

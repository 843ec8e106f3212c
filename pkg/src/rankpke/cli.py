"""Command-line front end: keygen, encrypt, decrypt, analyze, params."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import analysis
from .errors import DecodingFailure, FormatError, ParamError, RankPKEError, Unsupported
from .keyio import (
    KIND_PUBLIC,
    Message,
    payload_wire_bytes,
    read_object,
    write_object,
)
from .linalg import FieldVector
from .registry import DEMO_PRESETS, SECURITY_LEVELS, TABLE2, preset, registry_entry
from .rng import SEED_BYTES, SeededRng
from .schemes import Ciphertext, KeyPair, PublicKey, SchemeParams, SecretKey, decrypt, encrypt, keygen

EXIT_OK, EXIT_USAGE, EXIT_DECODE, EXIT_FORMAT = 0, 2, 3, 4
SEED_ENV = "RANKPKE_SEED"


class UsageError(Exception):
    pass


# -- helpers -----------------------------------------------------------------------

def _seed_rng(args, label: str) -> SeededRng:
    text = args.seed or os.environ.get(SEED_ENV)
    if text is None:
        if args.deterministic:
            raise UsageError("--deterministic needs --seed or RANKPKE_SEED")
        return SeededRng().spawn(label)
    try:
        seed = bytes.fromhex(text)
    except ValueError:
        raise UsageError("seed must be hex") from None
    if len(seed) != SEED_BYTES:
        raise UsageError(f"seed must be {SEED_BYTES} bytes ({2 * SEED_BYTES} hex digits)")
    # each subcommand draws from its own child stream
    return SeededRng(seed).spawn(label)


def _params_from_args(args) -> SchemeParams:
    overrides = {
        "q": args.q, "m": args.m, "n": args.n, "k": args.k, "l": args.l, "lam": args.lam,
    }
    if args.preset:
        base = preset(args.preset)
        if args.scheme and args.scheme != base.scheme:
            raise ParamError(f"--scheme {args.scheme} conflicts with preset {args.preset}")
        fields = dict(scheme=base.scheme, q=base.q, m=base.m, n=base.n, k=base.k, lam=base.lam, l=base.l)
    else:
        if not args.scheme:
            raise UsageError("give --preset or --scheme with --q --m --n --k")
        missing = [f for f in ("q", "m", "n", "k") if overrides[f] is None]
        if missing:
            raise UsageError("missing parameter(s): " + ", ".join("--" + f for f in missing))
        fields = dict(scheme=args.scheme, lam=2, l=1 if args.scheme != "loidreau" else 0)
    fields.update({k: v for k, v in overrides.items() if v is not None})
    return SchemeParams(**fields)


def bytes_per_digit_group(q: int) -> int:
    """Base-q digits needed for one byte."""
    return math.ceil(8 / math.log2(q))


def encode_bytes(data: bytes, params: SchemeParams) -> FieldVector:
    """4-byte length prefix, then each byte as a fixed group of base-q digits."""
    q, m, k = params.q, params.m, params.k_pub
    d = bytes_per_digit_group(q)
    capacity = (k * m) // d - 4
    if len(data) > capacity:
        raise UsageError(f"message of {len(data)} bytes exceeds capacity {capacity}")
    stream = len(data).to_bytes(4, "little") + data
    digits = []
    for byte in stream:
        for _ in range(d):
            digits.append(byte % q)
            byte //= q
    digits += [0] * (k * m - len(digits))
    field = params.field()
    return FieldVector.from_elements(field, [digits[i * m:(i + 1) * m] for i in range(k)])


def decode_bytes(msg: FieldVector, params: SchemeParams) -> bytes:
    q = params.q
    d = bytes_per_digit_group(q)
    digits = [int(x) for x in msg.data.reshape(-1)]
    weights = [q ** i for i in range(d)]

    def byte_at(i):
        v = sum(w * x for w, x in zip(weights, digits[i * d:(i + 1) * d]))
        if v > 255:
            raise FormatError("digit group does not encode a byte")
        return v

    if len(digits) < 4 * d:
        raise FormatError("message too short for a length prefix")
    length = int.from_bytes(bytes(byte_at(i) for i in range(4)), "little")
    if 4 + length > len(digits) // d:
        raise FormatError("length prefix exceeds message capacity")
    return bytes(byte_at(4 + i) for i in range(length))


def _emit(args, human: str, payload: dict):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _size_summary(params: SchemeParams) -> dict:
    return {
        "formula_bytes": analysis.public_key_size_bytes(params),
        "wire_bytes": payload_wire_bytes(params, KIND_PUBLIC),
        "information_rate": str(analysis.information_rate(params)),
        "information_rate_float": round(float(analysis.information_rate(params)), 4),
    }


def _params_dict(p: SchemeParams) -> dict:
    return {"scheme": p.scheme, "q": p.q, "m": p.m, "n": p.n, "k": p.k, "l": p.l, "lambda": p.lam, "t": p.t}


# -- subcommands -------------------------------------------------------------------

def cmd_keygen(args) -> int:
    params = _params_from_args(args)
    rng = _seed_rng(args, "keygen")
    kp = keygen(params, rng)
    pub_path = args.pub or "key.pub"
    sec_path = args.sec or "key.sec"
    write_object(pub_path, kp.public)
    write_object(sec_path, kp.secret)
    sizes = _size_summary(params)
    human = (
        f"{params.scheme} q={params.q} m={params.m} n={params.n} k={params.k} l={params.l} "
        f"lambda={params.lam} t={params.t}\n"
        f"public key payload: {sizes['formula_bytes']} bytes (formula), "
        f"{sizes['wire_bytes']} bytes (wire)\n"
        f"information rate: {sizes['information_rate_float']:.2f}\n"
        f"wrote {pub_path}, {sec_path}"
    )
    _emit(args, human, {"params": _params_dict(params), **sizes, "public": pub_path, "secret": sec_path})
    return EXIT_OK


def cmd_encrypt(args) -> int:
    if not args.pub or not args.inp or not args.out:
        raise UsageError("encrypt needs --pub, --in and --out")
    pk = read_object(args.pub, PublicKey)
    if args.encode_bytes:
        with open(args.inp, "rb") as fh:
            msg = encode_bytes(fh.read(), pk.params)
    else:
        m = read_object(args.inp, Message)
        if m.params != pk.params:
            raise ParamError("message parameters do not match the public key")
        msg = m.m
    rng = _seed_rng(args, "encrypt")
    ct = encrypt(pk, msg, rng)
    write_object(args.out, ct)
    _emit(args, f"wrote {args.out}", {"ciphertext": args.out})
    return EXIT_OK


def cmd_decrypt(args) -> int:
    if not args.sec or not args.inp or not args.out:
        raise UsageError("decrypt needs --sec, --in and --out")
    sk = read_object(args.sec, SecretKey)
    ct = read_object(args.inp, Ciphertext)
    if ct.params != sk.params:
        raise ParamError("ciphertext parameters do not match the secret key")
    try:
        msg = decrypt(sk, ct)
    except DecodingFailure as exc:
        _emit(args, f"consistency check failed: {exc}", {"consistency_check": False, "error": str(exc)})
        return EXIT_DECODE
    if args.encode_bytes:
        with open(args.out, "wb") as fh:
            fh.write(decode_bytes(msg, sk.params))
    else:
        write_object(args.out, Message(sk.params, msg))
    _emit(args, f"consistency check passed\nwrote {args.out}", {"consistency_check": True, "message": args.out})
    return EXIT_OK


def _cost_payload(params: SchemeParams, claimed=None) -> dict:
    rep = analysis.attack_costs(params, claimed)
    return {
        "log2_combinatorial": rep.log2_combinatorial,
        "log2_combinatorial_branches": list(rep.log2_combinatorial_branches),
        "log2_algebraic": rep.log2_algebraic,
        "log2_min": rep.log2_min,
        "claimed_level": claimed,
    }


def _trial_report(kp: KeyPair) -> dict:
    p = kp.params
    C_pub = analysis.public_code(kp.public)
    out = {
        "distinguisher_dim": analysis.frobenius_sum_dim(C_pub, 1),
        "public_dim": C_pub.dim,
        "verdict": analysis.distinguish_gabidulin(C_pub),
    }
    if p.scheme == "loidreau":
        r = analysis.demonstrate_loidreau_weakness(kp)
        out.update(assumption1=r.assumption1, chain_dim=r.chain_dim,
                   matches_target=r.matches_target, vulnerable=r.vulnerable)
    elif p.scheme == "mod1":
        r = analysis.verify_mod1_resistance(kp)
        out.update(dual_frobenius_sum_dim=r.frobenius_sum_dim, n=r.n,
                   shape_ok=r.shape_ok, resistant=r.resistant)
    else:
        r = analysis.verify_mod2_resistance(kp)
        out.update(mask_rank=r.mask_rank, chain_dim=r.chain_dim, target_contained=r.target_contained,
                   dual_overlap_dim=r.dual_overlap_dim, overlap_bound=r.overlap_bound,
                   resistant=r.resistant)
    return out


def _summarize(scheme: str, trials: list) -> dict:
    n = len(trials)
    if scheme == "loidreau":
        hits = sum(t["chain_dim"] == 2 and t["matches_target"] for t in trials)
        return {"trials": n, "chain_dim_2_and_match": hits, "assumption1_passes": sum(t["assumption1"] for t in trials)}
    if scheme == "mod1":
        return {"trials": n, "full_space": sum(t["dual_frobenius_sum_dim"] == t["n"] for t in trials)}
    return {"trials": n, "containment_fails": sum(not t["target_contained"] for t in trials),
            "overlap_bound_met": sum(t["dual_overlap_dim"] >= t["overlap_bound"] for t in trials)}


def cmd_analyze(args) -> int:
    if args.sec or args.pub:
        if not (args.sec and args.pub):
            raise UsageError("analyze on files needs both --pub and --sec")
        pk = read_object(args.pub, PublicKey)
        sk = read_object(args.sec, SecretKey)
        params = pk.params
    else:
        params = _params_from_args(args)
        pk = sk = None

    entry = registry_entry(args.preset) if args.preset else None
    payload = {"params": _params_dict(params)}
    lines = [f"{params.scheme} q={params.q} m={params.m} n={params.n} k={params.k} "
             f"l={params.l} lambda={params.lam} t={params.t}"]

    if args.costs:
        costs = _cost_payload(params, entry.security_bits if entry else None)
        payload["costs"] = costs
        c1, c2 = costs["log2_combinatorial_branches"]
        alg = costs["log2_algebraic"]
        lines.append(f"log2 combinatorial: {c1:.2f}, {c2:.2f}")
        lines.append("log2 algebraic: " + (f"{alg:.2f}" if alg is not None else "not applicable"))
        lines.append(f"log2 min: {costs['log2_min']:.2f}")
        if entry:
            lines.append(f"claimed level: {entry.security_bits}")
    else:
        if params.lam != 2 and params.scheme != "mod1":
            raise Unsupported("white-box checks need lambda = 2")
        if sk is not None:
            trials = [_trial_report(KeyPair(pk, sk))]
        else:
            rng = _seed_rng(args, "analyze")
            trials = []
            for i in range(args.trials):
                trials.append(_trial_report(keygen(params, rng.spawn(i))))
        payload["trials"] = trials
        payload["summary"] = _summarize(params.scheme, trials)
        for i, t in enumerate(trials):
            lines.append(f"trial {i}: " + ", ".join(f"{k}={v}" for k, v in sorted(t.items())))
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in payload["summary"].items()))
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def params_report() -> dict:
    rows = analysis.registry_report()
    table2 = {name: dict(zip(map(str, SECURITY_LEVELS), sizes)) for name, sizes in TABLE2.items()}
    flags = [f"{r['name']}: computed {r['size_bytes']} != table {r['table_size_bytes']}"
             for r in rows if not r["size_matches"]]
    flags += [f"{r['name']}: rate {r['information_rate']} != table {r['table_rate']}"
              for r in rows if not r["rate_matches"]]
    notes = []
    for r in rows:
        if r["scheme"] in ("mod1", "mod2"):
            t2 = TABLE2[r["scheme"]][SECURITY_LEVELS.index(r["security_bits"])]
            if t2 != r["table_size_bytes"]:
                notes.append(f"{r['name']}: first table lists {r['table_size_bytes']} bytes, "
                             f"comparison table lists {t2}; both kept as published")
    demos = {name: _params_dict(p) for name, p in DEMO_PRESETS.items()}
    return {"registry": rows, "comparison": table2, "flags": flags, "notes": notes, "demo_presets": demos}


def cmd_params(args) -> int:
    rep = params_report()
    lines = [f"{'name':<14}{'q':>3}{'m':>4}{'n':>4}{'k':>4}{'l':>3}{'t':>3}"
             f"{'bytes':>8}{'table':>8}{'rate':>6}{'comb1':>9}{'comb2':>9}{'alg':>9}{'min':>9}{'sec':>5}"]
    for r in rep["registry"]:
        c1, c2 = r["log2_combinatorial"]
        alg = f"{r['log2_algebraic']:.1f}" if r["log2_algebraic"] is not None else "n/a"
        mark = "" if r["size_matches"] and r["rate_matches"] else "  *"
        lines.append(
            f"{r['name']:<14}{r['q']:>3}{r['m']:>4}{r['n']:>4}{r['k']:>4}{r['l']:>3}{r['t']:>3}"
            f"{r['size_bytes']:>8}{r['table_size_bytes']:>8}{r['information_rate']:>6.2f}"
            f"{c1:>9.1f}{c2:>9.1f}{alg:>9}{r['log2_min']:>9.1f}{r['security_bits']:>5}{mark}"
        )
    lines.append("")
    lines.append(f"{'scheme':<18}" + "".join(f"{lvl:>10}" for lvl in SECURITY_LEVELS))
    for name, sizes in TABLE2.items():
        lines.append(f"{name:<18}" + "".join(f"{s:>10}" for s in sizes))
    lines.append("")
    lines.append(f"flags: {len(rep['flags'])}")
    lines += ["  " + f for f in rep["flags"]]
    lines += ["note: " + n for n in rep["notes"]]
    _emit(args, "\n".join(lines), rep)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scheme", choices=("loidreau", "mod1", "mod2"))
    common.add_argument("--preset")
    common.add_argument("--q", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--lambda", dest="lam", type=int)
    common.add_argument("--seed", help="32-byte hex seed (falls back to $RANKPKE_SEED)")
    common.add_argument("--deterministic", action="store_true", help="refuse to run without a seed")
    common.add_argument("--trials", type=int, default=10)
    common.add_argument("--in", dest="inp")
    common.add_argument("--out")
    common.add_argument("--pub")
    common.add_argument("--sec")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--encode-bytes", action="store_true")
    common.add_argument("--costs", action="store_true")

    parser = argparse.ArgumentParser(prog="rankpke", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
        ("keygen", cmd_keygen, "generate a key pair"),
        ("encrypt", cmd_encrypt, "encrypt a message file"),
        ("decrypt", cmd_decrypt, "decrypt a ciphertext file"),
        ("analyze", cmd_analyze, "structural checks and attack-cost estimates"),
        ("params", cmd_params, "print the parameter registry"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DecodingFailure as exc:
        print(f"error: decoding failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except FormatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (UsageError, ParamError, Unsupported, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RankPKEError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""White-box check of the Frobenius chain on reduced-size Loidreau keys.

For each trial, the chain intersection computed from the public key alone is
compared with the 2-dimensional space predicted from the secret (gamma, g, h).
"""
import argparse

from rankpke import SchemeParams, SeededRng, keygen
from rankpke import analysis as A


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--n", type=int, default=24)
    ap.add_argument("--k", type=int, nargs="+", default=[13, 14])
    ap.add_argument("--trials", type=int, default=20)
    args = ap.parse_args()
    for k in args.k:
        p = SchemeParams("loidreau", args.q, args.n, args.n, k)
        reps = [A.demonstrate_loidreau_weakness(keygen(p, SeededRng(i))) for i in range(args.trials)]
        held = sum(r.assumption1 for r in reps)
        hits = sum(r.vulnerable for r in reps)
        dims = sorted({r.chain_dim for r in reps})
        print(f"n={args.n} k={k} t={p.t}: intersection assumption {held}/{args.trials}, "
              f"chain dims {dims}, chain == target {hits}/{args.trials}")


if __name__ == "__main__":
    main()

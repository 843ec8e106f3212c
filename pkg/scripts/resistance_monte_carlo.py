"""Monte Carlo structural checks for both modifications and the intersection probability."""
import argparse
import math

from rankpke import ExtField, SeededRng, keygen, preset
from rankpke import analysis as A


def mod1(names, trials):
    for name in names:
        p = preset(name)
        good = sum(A.verify_mod1_resistance(keygen(p, SeededRng(i))).resistant for i in range(trials))
        print(f"{name}: dim(D + D^[1]) = n in {good}/{trials}")


def mod2(trials):
    p = preset("mod2-demo")
    fails = overlap = 0
    for i in range(trials):
        rep = A.verify_mod2_resistance(keygen(p, SeededRng(i)))
        fails += not rep.target_contained
        overlap += rep.dual_overlap_dim >= rep.overlap_bound
    weak = A.verify_mod2_resistance(A.degenerate_mod2_keypair(p, SeededRng(0)))
    print(f"mod2-demo: containment fails {fails}/{trials}, overlap bound met {overlap}/{trials}")
    print(f"mod2-demo with zero mask: containment holds = {weak.target_contained}")


def probability(trials):
    for n, k, l, m in [(3, 1, 1, 2), (4, 1, 2, 2), (6, 2, 2, 6)]:
        exact = float(A.trivial_intersection_prob_bound(n, k, l, m, 2))
        freq = A.sample_trivial_intersection_rate(ExtField(2, m), n, k, l, trials, SeededRng(n * 100 + k))
        sigma = math.sqrt(exact * (1 - exact) / trials)
        print(f"(q=2, m={m}, n={n}, k={k}, l={l}): exact {exact:.6f}, sampled {freq:.6f}, "
              f"|diff|/sigma = {abs(freq - exact) / sigma if sigma else 0:.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--mc-trials", type=int, default=2000)
    ap.add_argument("--full", action="store_true", help="include the full-size mod1 rows")
    args = ap.parse_args()
    names = ["mod1-demo"] + (["mod1-128", "mod1-192", "mod1-256"] if args.full else [])
    mod1(names, args.trials)
    mod2(args.trials)
    probability(args.mc_trials)


if __name__ == "__main__":
    main()

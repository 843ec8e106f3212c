"""Recompute the public-key sizes, information rates and attack costs for every registry row."""
import argparse
import json

from rankpke.cli import params_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rep = params_report()
    if args.json:
        print(json.dumps(rep, indent=2))
        return
    print(f"{'row':<14}{'bytes':>8}{'table':>8}{'rate':>6}{'log2 min':>10}{'sec':>5}")
    for r in rep["registry"]:
        print(f"{r['name']:<14}{r['size_bytes']:>8}{r['table_size_bytes']:>8}"
              f"{r['information_rate']:>6.2f}{r['log2_min']:>10.2f}{r['security_bits']:>5}")
    print()
    for name, sizes in rep["comparison"].items():
        print(f"{name:<18}" + "".join(f"{v:>10}" for v in sizes.values()))
    print(f"\nmismatches: {len(rep['flags'])}")
    for note in rep["notes"]:
        print("note:", note)


if __name__ == "__main__":
    main()

"""Seeded reachability sweep over random GF(p) matrices (default GF(3), n=3, m in {1, 2}).

    python scripts/sample_gf3.py --count 50 --seed 1
"""

import argparse
import json
import sys
import time

from rankpert.algebra import GF
from rankpert.oracle import sampled_matrices, theorem_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--ranks", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    F = GF(args.p)
    t0 = time.perf_counter()
    mats = sampled_matrices(F, args.n, args.count, args.seed)
    rep = theorem_sweep(F, args.n, args.ranks, matrices=mats, check_necessity=False, seed=args.seed)
    doc = {"field": str(F), "n": args.n, "ranks": args.ranks, "wall_time": round(time.perf_counter() - t0, 3), **rep.to_dict()}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.all_equal else 3


if __name__ == "__main__":
    sys.exit(main())

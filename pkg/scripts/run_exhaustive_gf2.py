"""Exhaustive reachability sweep over GF(2): every n x n matrix, every m in 0..n.

    python scripts/run_exhaustive_gf2.py --n 3 --out gf2_n3.json
"""

import argparse
import json
import sys
import time

from rankpert.algebra import GF
from rankpert.oracle import theorem_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--no-necessity", action="store_true", help="skip the per-pair Jordan inequality check")
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = theorem_sweep(GF(2), args.n, range(args.n + 1), check_necessity=not args.no_necessity)
    doc = {"field": "GF(2)", "n": args.n, "wall_time": round(time.perf_counter() - t0, 3), **rep.to_dict()}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.all_equal and rep.necessity_failures == 0 else 3


if __name__ == "__main__":
    sys.exit(main())

"""Random construct/verify round trips over Q and several prime fields.

    python scripts/roundtrip_battery.py --count 300 --seed 7
"""

import argparse
import json
import random
import sys

from rankpert.algebra import GF, Q, random_monic
from rankpert.canonical import smith_invariant_factors
from rankpert.matrix import charpoly, random_derogatory, random_matrix, rank
from rankpert.perturb import construct, required_divisor

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7), GF(101)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    per_field = {str(F): [0, 0] for F in FIELDS}
    for i in range(args.count):
        F = FIELDS[i % len(FIELDS)]
        n = rng.randint(1, 6 if F == Q else 8)
        A = random_matrix(F, n, rng, -5, 5) if F == Q and i % 2 else random_derogatory(F, n, rng)
        m = rng.randint(0, n + 1)
        div = required_divisor(smith_invariant_factors(A), m)
        q = div * random_monic(F, n - div.degree, rng)
        B = construct(A, q, m).B
        tally = per_field[str(F)]
        tally[0] += 1
        tally[1] += rank(B) <= m and charpoly(A + B) == q
    ok = all(t == p for t, p in per_field.values())
    doc = {"seed": args.seed, "count": args.count, "per_field": {k: {"runs": t, "passed": p} for k, (t, p) in per_field.items()}, "all_passed": ok}
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())

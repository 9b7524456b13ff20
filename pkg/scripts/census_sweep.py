"""Line counts of random quartics containing a line, as a histogram.

Usage: python scripts/census_sweep.py [--p 13] [--n 30] [--seed 1]
"""
import argparse
import random
from collections import Counter

from quarticlines.algebra import finite_field
from quarticlines.census import enumerate_elimination
from quarticlines.generators import random_quartic_with_line, random_quartic_with_lines
from quarticlines.surface import smoothness_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    F = finite_field(args.p)
    rng = random.Random(args.seed)
    hist = Counter()
    for i in range(args.n):
        gen = random_quartic_with_lines if i % 2 else random_quartic_with_line
        S = gen(F, rng)
        if smoothness_check(S).status != "smooth":
            continue
        hist[enumerate_elimination(S).count] += 1
    for n, c in sorted(hist.items()):
        print(f"{n:3d} lines: {c}")


if __name__ == "__main__":
    main()

"""Line counts of the r = -16/27 example surface at successive primes.

Usage: python scripts/example60_primes.py [--upto 120] [--tower 2]
"""
import argparse

from quarticlines.algebra import finite_field
from quarticlines.algebra.fields import is_prime
from quarticlines.census import stabilized_count
from quarticlines.data import example_path
from quarticlines.parse import ParseError, load_surface


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--upto", type=int, default=120)
    ap.add_argument("--tower", type=int, default=2)
    args = ap.parse_args()
    for p in range(5, args.upto + 1):
        if not is_prime(p):
            continue
        try:
            S = load_surface(example_path("example60"), finite_field(p).spec)
        except ParseError as exc:  # the parameter's denominator vanishes mod p
            print(f"p={p}: bad reduction ({exc.msg})")
            continue
        res = stabilized_count(S, K=args.tower, max_order=1 << 16)
        print(f"p={p}: {res.count} lines, levels {res.count_per_level}", flush=True)


if __name__ == "__main__":
    main()

"""Search small fields over which every line of the Schur quartic is rational.

Usage: python scripts/find_schur_field.py [--max-order 200]
"""
import argparse

from quarticlines.algebra import finite_field
from quarticlines.algebra.fields import is_prime
from quarticlines.census import enumerate_elimination
from quarticlines.data import example_path
from quarticlines.parse import load_surface


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-order", type=int, default=200)
    args = ap.parse_args()
    for q in range(5, args.max_order + 1):
        pk = next(((p, k) for p in range(5, q + 1) if is_prime(p) for k in range(1, 8) if p ** k == q), None)
        if pk is None:
            continue
        S = load_surface(example_path("schur"), finite_field(*pk).spec)
        n = enumerate_elimination(S).count
        print(f"F_{pk[0]}^{pk[1]}: {n} lines" + ("  <- all 64" if n == 64 else ""), flush=True)


if __name__ == "__main__":
    main()

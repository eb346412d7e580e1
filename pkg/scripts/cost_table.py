#!/usr/bin/env python3
"""Print T-count comparison tables: repeated approximation vs catalytic.

Usage: python scripts/cost_table.py [--epsilon 1e-15]
"""

import argparse
from fractions import Fraction

from catembed.compilers import cost_model


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", default="1e-15")
    args = parser.parse_args()
    import decimal

    eps = Fraction(decimal.Decimal(args.epsilon))

    print(f"order-3 phase gate, epsilon = {args.epsilon}")
    print(f"{'m':>10} {'approx T':>16} {'catalytic T':>16} {'reduction %':>12}")
    for exp in (4, 8, 12, 16, 20, 24):
        r = cost_model("egate", 2**exp, eps)
        print(
            f"{2**exp:>10} {float(r.approx_tcount):>16.1f} "
            f"{float(r.catalytic_tcount):>16.1f} {float(r.reduction_percent):>12.2f}"
        )

    print(f"\nquantum Fourier transform, epsilon = {args.epsilon}")
    print(f"{'n':>10} {'approx T':>16} {'catalytic T':>16} {'reduction %':>12}")
    for n in (4, 8, 16, 32, 64, 128):
        r = cost_model("qft", n, eps)
        print(
            f"{n:>10} {float(r.approx_tcount):>16.1f} "
            f"{float(r.catalytic_tcount):>16.1f} {float(r.reduction_percent):>12.2f}"
        )


if __name__ == "__main__":
    main()

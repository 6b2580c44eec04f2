#!/usr/bin/env python3
"""Scan the sector table for one qubit count: dimensions, partner pairs,
coupling-energy variances, and the exchange-operator commutation check.

Usage: python scripts/accidental_scan.py --n 6 --qmax 12
"""

import argparse

from tcforge import liealg as la
from tcforge.operators import energy_variance_exact
from tcforge.sectors import (accidental_pairs, enumerate_sectors, is_filled,
                             multiplicity, sector_dim)


def jtxt(jj):
    return str(jj // 2) if jj % 2 == 0 else f"{jj}/2"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--qmax", type=int, default=12)
    args = ap.parse_args()

    print(f"{'q':>3} {'j':>5} {'dim':>4} {'mult':>5} {'filled':>7} "
          f"{'Tr(H^2)/d':>12}")
    for idx in enumerate_sectors(args.n, args.qmax):
        var = energy_variance_exact(idx)
        print(f"{idx.q:>3} {jtxt(idx.jj):>5} {sector_dim(idx):>4} "
              f"{multiplicity(args.n, idx.jj):>5} "
              f"{str(is_filled(idx)):>7} {str(var):>12}")

    pairs = accidental_pairs(args.n, args.qmax)
    print(f"\npartner pairs (q, j) <-> (q', j'), charge gap 3(j-j'):")
    for a, b in pairs:
        print(f"  ({a.q}, {jtxt(a.jj)}) <-> ({b.q}, {jtxt(b.jj)})   "
              f"dim {sector_dim(a)}, variance {energy_variance_exact(a)}")

    rep = la.variance_separation_check(args.n, args.qmax)
    print(f"\nvariance separation: {rep.pairs_checked} same-dimension pairs "
          f"checked, clean = {rep.ok}")
    com = la.check_exchange_commutation(args.n, args.qmax)
    print(f"exchange operator on {com.dim} states: |[H,S]| = "
          f"{com.comm_norm:.2e}, z-shift exact = {com.jz_commutation_exact}, "
          f"skipped pairs = {com.skipped}")


if __name__ == "__main__":
    main()

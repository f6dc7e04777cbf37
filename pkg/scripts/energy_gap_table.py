"""E(C_n) - E(P_n^6) for a range of orders, written as CSV.

    python3 scripts/energy_gap_table.py 8 120 > gaps.csv
"""

import argparse
import csv
import sys

from unicyclic_energy.energy import compare_energies


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n_min", type=int, nargs="?", default=8)
    ap.add_argument("n_max", type=int, nargs="?", default=100)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["n", "n_mod_4", "difference", "method", "verdict"])
    for n in range(args.n_min, args.n_max + 1):
        c = compare_energies(f"cycle:{n}", f"p6:{n}", tol=args.tol)
        w.writerow([n, n % 4, f"{c.difference:.12f}", c.method, c.verdict])


if __name__ == "__main__":
    main()

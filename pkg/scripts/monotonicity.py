"""Check that E(C_n) - E(P_n^6) strictly decreases along each odd/2-mod-4 residue class."""

import argparse
import json

from unicyclic_energy.proofkit import monotonicity_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=400)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    reps = [monotonicity_scan(r, args.n_max) for r in (1, 2, 3)]
    if args.json:
        print(json.dumps([r.to_dict() for r in reps], indent=2))
        return
    for r in reps:
        print(f"n = {r.residue} mod 4, {r.ns[0]}..{r.ns[-1]}: {len(r.violations)} violations, "
              f"smallest step {r.min_decrement:.3e}, resolved above quadrature error: {r.resolved}")
        print(f"   first {r.differences[0]:+.8f}  last {r.differences[-1]:+.8f}")


if __name__ == "__main__":
    main()

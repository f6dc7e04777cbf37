"""Issue every sign certificate on a chosen grid and dump them as JSON."""

import argparse
import json

from unicyclic_energy.proofkit import CASE_TAGS, GridSpec, certify, recheck_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=4096)
    ap.add_argument("--hi", type=float, default=1e4)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    grid = GridSpec(hi=args.hi, points=args.points)
    certs = []
    for tag in CASE_TAGS:
        c = certify(tag, grid)
        print(f"{tag:6s} min margin {c.min_margin:.3e}  recheck {recheck_certificate(c)}")
        certs.append(c.to_dict())
    if args.out != "-":
        with open(args.out, "w") as fh:
            json.dump(certs, fh, indent=2)


if __name__ == "__main__":
    main()

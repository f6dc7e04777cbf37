"""The two bounding integrals of the n = 0 mod 4 case, with a scipy cross-check,
and how E(C_n) - E(P_n^6) approaches their sum as n grows."""

import argparse
import math

import numpy as np
from scipy import integrate

from unicyclic_energy.proofkit import _numeric, coulson_cycle_minus_p6, limit_integral_a


def scipy_value(fn, sign):
    f = lambda x: 1 / (1 + fn(np.array([sign * x]))[0]) - 1  # noqa: E731
    return (integrate.quad(f, 0, 1)[0] + integrate.quad(f, 1, np.inf, limit=200)[0]) / math.pi


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="*", default=[16, 32, 64, 128, 256, 400])
    args = ap.parse_args()

    li = limit_integral_a()
    nm = _numeric()
    print(f"A1 side      {li.first:+.10f}   scipy {scipy_value(nm['a1m1'], 1):+.10f}")
    print(f"A2 side      {li.second:+.10f}   scipy {scipy_value(nm['a2m1'], -1):+.10f}")
    print(f"log forms    {li.log_first:+.10f}   {li.log_second:+.10f}")
    print(f"bound (sum)  {li.first + li.second:+.10f}")
    print()
    print("   n   E(C_n)-E(P_n^6)   minus log-form limit")
    lim = li.log_first + li.log_second
    for n in args.ns:
        d = coulson_cycle_minus_p6(n, 1e-10).value
        print(f"{n:4d}   {d:+.10f}    {d - lim:+.3e}")


if __name__ == "__main__":
    main()

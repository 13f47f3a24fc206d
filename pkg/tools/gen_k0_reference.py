#!/usr/bin/env python3
"""Regenerate the frozen K0 reference values.

Writes tests/data/k0_reference.csv: 200 log-spaced abscissas on
[1e-6, 30] with K0 evaluated by mpmath at 40 working digits and
printed to 30 significant digits.  With --verify-points it instead
prints the short table embedded in gpue/verify.py.
"""

import argparse

import mpmath as mp

mp.mp.dps = 40

VERIFY_XS = [1e-6, 1e-4, 0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 12.0, 30.0]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--verify-points", action="store_true")
    args = ap.parse_args()

    if args.verify_points:
        for x in VERIFY_XS:
            val = mp.besselk(0, mp.mpf(repr(x)))
            print(f"    ({x!r}, {mp.nstr(val, 17)}),")
        return

    print("x,k0")
    lo, hi = mp.mpf("1e-6"), mp.mpf(30)
    n = 200
    for i in range(n):
        x = lo * (hi / lo) ** (mp.mpf(i) / (n - 1))
        x = mp.mpf(float(x))  # snap to binary64 so the test input is exact
        val = mp.besselk(0, x)
        print(f"{mp.nstr(x, 17)},{mp.nstr(val, 30)}")


if __name__ == "__main__":
    main()

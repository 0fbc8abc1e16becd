#!/usr/bin/env python3
"""Locate the first-contact point of each named cusp family and compare it
with the isolated fixed point of the matching isotropy class."""

import argparse
import time

from picard.catalog import FIRST_CONTACT
from picard.exhaustion import f_exhaustion, first_contact, named_family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=100_000)
    args = ap.parse_args()
    worst = 0.0
    for name, expected in FIRST_CONTACT.items():
        fam = named_family(name)
        t0 = time.perf_counter()
        z = first_contact(fam, budget=args.budget)
        dt = time.perf_counter() - t0
        vals = [f_exhaustion(P, z) for P in fam]
        err = z.distance(expected)
        worst = max(worst, err)
        print(
            f"{name:<5} y={z.y:.10f} beta={z.beta.real:+.10f}{z.beta.imag:+.10f}i r={z.r:+.10f}"
            f"  err={err:.1e}  spread={max(vals) - min(vals):.1e}  {dt:.2f}s"
        )
    print(f"max coordinate error {worst:.2e}")
    return 0 if worst <= 1e-6 else 1


if __name__ == "__main__":
    raise SystemExit(main())

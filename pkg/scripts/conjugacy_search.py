#!/usr/bin/env python3
"""Bounded conjugacy search between the isotropy classes of equal structure.

Searches every element of Gamma with entry norms <= bound. A hit is a proof of
conjugacy; an empty search is only evidence of non-conjugacy.
"""

import argparse
import json
import time

from picard.elliptic import bounded_nonconjugacy, gamma_class

PAIRS = [("Gamma_1", "Gamma_2"), ("Gamma_3", "Gamma_4"), ("Gamma_1", "Gamma_1")]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=8)
    args = ap.parse_args()
    for a, b in PAIRS:
        t0 = time.perf_counter()
        rep = bounded_nonconjugacy(gamma_class(a), gamma_class(b), args.bound)
        rep["seconds"] = round(time.perf_counter() - t0, 2)
        print(f"{a} vs {b}: {json.dumps(rep, sort_keys=True)}")


if __name__ == "__main__":
    main()

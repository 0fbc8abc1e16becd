#!/usr/bin/env python3
"""Rebuild the spine-cell stabilizers from their generator words and print
order, structure label and the element-order profile of each."""

from picard.catalog import TABLE1
from picard.subgroups import closure, fingerprint, identify_fingerprint


def main():
    print(f"{'cell':<16}{'gens':<28}{'order':>6}  {'label':<8}{'expected':<9}profile")
    bad = 0
    for row in TABLE1:
        s = closure(row.generators())
        fp = fingerprint(s)
        label = identify_fingerprint(fp)
        bad += label != row.structure
        prof = " ".join(f"{k}:{v}" for k, v in fp.order_statistics)
        print(f"{row.cell:<16}{', '.join(row.words):<28}{s.order:>6}  {label:<8}{row.structure:<9}{prof}")
    print("all rows match" if not bad else f"{bad} rows differ")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

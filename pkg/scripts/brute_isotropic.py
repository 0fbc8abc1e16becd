#!/usr/bin/env python3
"""Naive count of primitive isotropic vectors up to units, entry norms <= h.

Independent of the library: plain complex arithmetic, primitivity by trying
every divisor, unit classes as explicit orbit sets. Produced the recorded
counts 4, 24, 36 at heights 1, 2, 4.
"""

import itertools
import sys


def count(h):
    m = int(h**0.5) + 1
    gs = [complex(a, b) for a in range(-m, m + 1) for b in range(-m, m + 1) if a * a + b * b <= h]
    divs = [d for d in gs if abs(d) ** 2 > 1]

    def divides(d, x):
        t = x / d
        return abs(t.real - round(t.real)) < 1e-9 and abs(t.imag - round(t.imag)) < 1e-9

    seen = set()
    for v in itertools.product(gs, repeat=3):
        if not any(v):
            continue
        n, p, q = v
        if abs(n.conjugate() * 1j * q - abs(p) ** 2 - q.conjugate() * 1j * n) > 1e-9:
            continue
        if any(all(divides(d, x) for x in v) for d in divs):
            continue
        seen.add(frozenset(tuple(u * x for x in v) for u in (1, 1j, -1, -1j)))
    return len(seen)


if __name__ == "__main__":
    heights = [int(a) for a in sys.argv[1:]] or [1, 2, 4]
    for h in heights:
        print(h, count(h))

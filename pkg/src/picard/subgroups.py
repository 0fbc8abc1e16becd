"""Finite subgroups of Gamma: closure, structure fingerprints and identification."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .group import IDENTITY, GMatrix, is_gamma_member

DEFAULT_CLOSURE_CAP = 256


class ClosureCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SubgroupClosure:
    generators: tuple[GMatrix, ...]
    elements: tuple[GMatrix, ...]  # sorted by GMatrix.key

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: GMatrix) -> bool:
        return g in self.element_set

    @property
    def element_set(self) -> frozenset[GMatrix]:
        return frozenset(self.elements)

    def issubset(self, other: SubgroupClosure) -> bool:
        return self.element_set <= other.element_set


def closure(gens: Sequence[GMatrix], cap: int = DEFAULT_CLOSURE_CAP) -> SubgroupClosure:
    """Breadth-first closure of ``gens`` under right multiplication by generators.

    For a finite group this also yields inverses (g^-1 is a positive power of g).
    """
    gens = tuple(gens)
    for g in gens:
        if not is_gamma_member(g):
            raise ValueError(f"generator {g} is not in Gamma")
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = h @ g
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"closure exceeded {cap} elements")
        frontier = nxt
    return SubgroupClosure(gens, tuple(sorted(seen, key=GMatrix.key)))


def element_order(g: GMatrix, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    h, k = g, 1
    while h != IDENTITY:
        h, k = h @ g, k + 1
        if k > cap:
            raise ClosureCapExceeded(f"element order exceeds {cap}")
    return k


@dataclass(frozen=True)
class StructureFingerprint:
    order: int
    abelian: bool
    exponent: int
    order_statistics: tuple[tuple[int, int], ...]  # sorted (element order, count)
    center_order: int
    derived_subgroup_order: int

    def stats(self) -> dict[int, int]:
        return dict(self.order_statistics)


def fingerprint(s: SubgroupClosure) -> StructureFingerprint:
    els = s.elements
    orders = [element_order(g) for g in els]
    stats = Counter(orders)
    center = [z for z in els if all(z @ g == g @ z for g in els)]
    commutators = {a.inv() @ b.inv() @ a @ b for a in els for b in els}
    derived = closure(tuple(commutators) or (IDENTITY,)).order
    return StructureFingerprint(
        order=len(els),
        abelian=len(center) == len(els),
        exponent=reduce(math.lcm, orders, 1),
        order_statistics=tuple(sorted(stats.items())),
        center_order=len(center),
        derived_subgroup_order=derived,
    )


# Computed once from closure({eps*w, xi^2}) and frozen. The element-order profile
# coincides with that of the wreath product C4 wr C2.
G31_FINGERPRINT = StructureFingerprint(
    order=32,
    abelian=False,
    exponent=8,
    order_statistics=((1, 1), (2, 7), (4, 16), (8, 8)),
    center_order=4,
    derived_subgroup_order=4,
)

LABELS = ("trivial", "Z2", "Z4", "Z8", "Z12", "Z2xZ4", "S3", "G31", "unknown")


def identify_fingerprint(fp: StructureFingerprint) -> str:
    if fp.order == 1:
        return "trivial"
    if fp.exponent == fp.order and fp.order in (2, 4, 8, 12):
        return f"Z{fp.order}"
    if fp.order == 8 and fp.abelian and fp.exponent == 4:
        return "Z2xZ4"
    if fp.order == 6 and not fp.abelian:
        return "S3"
    if fp == G31_FINGERPRINT:
        return "G31"
    return "unknown"


def identify(s: SubgroupClosure) -> str:
    if s.order > 64:
        raise ValueError("identify only handles groups of order <= 64")
    return identify_fingerprint(fingerprint(s))


def report(s: SubgroupClosure) -> dict:
    fp = fingerprint(s)
    return {
        "generators": [str(g) for g in s.generators],
        "order": fp.order,
        "label": identify_fingerprint(fp),
        "order_statistics": {str(k): v for k, v in fp.order_statistics},
        "center_order": fp.center_order,
    }

"""Exhaustion functions f_P, cusp enumeration, strong admissibility, the spine,
and numerically located first-contact points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.optimize import minimize

from .gaussian import ZERO, GaussInt, GaussVec3, canonical_unit_rep, gaussian_integers, is_primitive
from .group import GENERATORS, IDENTITY, GMatrix, form_q, word
from .horo import DEFAULT_TOL, HoroPoint, act, reduce_heisenberg, siegel_reduce


@dataclass(frozen=True, order=False)
class ParabolicRep:
    """Rational parabolic subgroup, encoded by its primitive isotropic vector
    (n, p, q) normalized by ``canonical_unit_rep``."""

    v: GaussVec3

    def __post_init__(self):
        if not self.v:
            raise ValueError("zero vector")
        n, p, q = self.v
        if p.norm() != 2 * (n * q.conj()).im:
            raise ValueError(f"{self.v} is not isotropic")
        if not is_primitive(self.v):
            raise ValueError(f"{self.v} is not primitive")
        object.__setattr__(self, "v", canonical_unit_rep(self.v))

    @classmethod
    def of(cls, n, p, q) -> ParabolicRep:
        return cls(GaussVec3.of(n, p, q))

    @classmethod
    def parse(cls, text: str) -> ParabolicRep:
        return cls(GaussVec3.parse(text))

    def __str__(self) -> str:
        return str(self.v)

    def key(self) -> tuple[int, ...]:
        return self.v.key()


P0 = ParabolicRep.of(1, 0, 0)


def sort_family(reps: Iterable[ParabolicRep]) -> tuple[ParabolicRep, ...]:
    return tuple(sorted(set(reps), key=ParabolicRep.key))


def f_exhaustion(P: ParabolicRep, z: HoroPoint) -> float:
    n, p, q = (complex(x) for x in P.v)
    y, b, r = z.y, z.beta, z.r
    d = (
        abs(n - b * p + (0.5j * abs(b) ** 2 - r) * q) ** 2
        + y * y * abs(p - 1j * b.conjugate() * q) ** 2
        + y**4 * abs(q) ** 2
    )
    return y / math.sqrt(d)


def apply_gamma(g: GMatrix, P: ParabolicRep) -> ParabolicRep:
    return ParabolicRep(g @ P.v)


def pairing_norm(P: ParabolicRep, Q: ParabolicRep) -> int:
    return form_q(P.v, Q.v).norm()


def admissibility_clause(fam: Sequence[ParabolicRep]) -> int | None:
    """Which of the two configuration clauses the family meets: 1, 2 or None."""
    fam = sort_family(fam)
    if not fam:
        raise ValueError("empty family")
    worst = max((pairing_norm(a, b) for a in fam for b in fam), default=0)
    if len(fam) <= 5 and worst <= 2:
        return 1
    if len(fam) == 8 and worst <= 4:
        return 2
    return None


def is_strongly_admissible(fam: Sequence[ParabolicRep]) -> bool:
    return admissibility_clause(fam) is not None


def enumerate_isotropic(height: int) -> list[ParabolicRep]:
    """Canonical primitive isotropic vectors with all entry norms <= height."""
    if height < 1:
        raise ValueError("height must be >= 1")
    gs = list(gaussian_integers(height))
    by_norm: dict[int, list[GaussInt]] = {}
    for x in gs:
        by_norm.setdefault(x.norm(), []).append(x)
    out = set()
    for q in gs:
        for n in gs:
            if not (n or q):
                continue
            # |p|^2 = 2 Im(n conj q)
            for p in by_norm.get(2 * (n * q.conj()).im, ()):
                v = GaussVec3(n, p, q)
                if is_primitive(v):
                    out.add(ParabolicRep(v))
    return sorted(out, key=ParabolicRep.key)


def _disc(center: complex, radius2: float) -> Iterator[GaussInt]:
    """Gaussian integers x with |x - center|^2 <= radius2."""
    if radius2 < 0:
        return
    rad = math.sqrt(radius2)
    for a in range(math.ceil(center.real - rad), math.floor(center.real + rad) + 1):
        rem = radius2 - (a - center.real) ** 2
        if rem < 0:
            continue
        s = math.sqrt(rem)
        for b in range(math.ceil(center.imag - s), math.floor(center.imag + s) + 1):
            yield GaussInt(a, b)


def parabolics_above(z: HoroPoint, t: float) -> list[tuple[ParabolicRep, float]]:
    """Every P with f_P(z) >= t, with its value.

    The squared denominator of f_P is a sum of three nonnegative terms, and
    f_P(z) >= t means that sum is at most y^2 / t^2. Each term is bounded by it:
        y^4 |q|^2                          <= y^2/t^2  ->  |q|^2 <= 1/(y t)^2
        y^2 |p - i conj(beta) q|^2         <= y^2/t^2  ->  p in a disc of radius 1/t
        |n - beta p + (i|beta|^2/2 - r) q|^2 <= y^2/t^2 -> n in a disc of radius y/t
    so q, then p, then n range over finite sets.
    """
    if t <= 0:
        raise ValueError("threshold must be positive")
    y, b, r = z.y, z.beta, z.r
    slack = 1 + 1e-9
    found = {}
    for q in _disc(0j, slack / (y * t) ** 2):
        qc = complex(q)
        for p in _disc(1j * b.conjugate() * qc, slack / t**2):
            pc = complex(p)
            for n in _disc(b * pc - (0.5j * abs(b) ** 2 - r) * qc, slack * (y / t) ** 2):
                if not (n or q):
                    continue
                if 2 * (n * q.conj()).im != p.norm():
                    continue
                v = GaussVec3(n, p, q)
                if not is_primitive(v):
                    continue
                P = ParabolicRep(v)
                if P in found:
                    continue
                f = f_exhaustion(P, z)
                if f >= t:
                    found[P] = f
    return sorted(found.items(), key=lambda kv: kv[0].key())


def max_height(z: HoroPoint) -> float:
    # f_P0(z) = y, so the search threshold y misses nothing above the maximum
    return max(f for _, f in parabolics_above(z, z.y * (1 - 1e-12)))


def argmax_parabolics(z: HoroPoint, tol: float = DEFAULT_TOL) -> tuple[ParabolicRep, ...]:
    """The cusps P whose height f_P(z) is within ``tol`` of the maximum over all cusps."""
    top = max_height(z)
    cands = parabolics_above(z, max(top - tol, 1e-3 * top))
    return sort_family(P for P, f in cands if f >= top - tol)


def in_spine(z: HoroPoint, tol: float = DEFAULT_TOL) -> bool:
    return len(argmax_parabolics(z, tol)) >= 2


def f_values(fam: Iterable[ParabolicRep], z: HoroPoint) -> dict[ParabolicRep, float]:
    return {P: f_exhaustion(P, z) for P in fam}


# ---------------------------------------------------------------------------
# named families

NAMED_FAMILY_WORDS: dict[str, tuple[str, ...]] = {
    "I2_1": ("id", "w"),
    "I3_1": ("id", "w", "tau w"),
    "I3_2": ("id", "w", "sigma w"),
    "I2_2": ("id", "xi"),
    "I8": (
        "id",
        "w",
        "w tau sigma w",
        "tau~ sigma w",
        "tau sigmacheck w",
        "tau w tau sigma w",
        "tau^2 sigmacheck sigma w",
        "eps w xi^4 w",
    ),
}


def named_family(name: str) -> tuple[ParabolicRep, ...]:
    try:
        words = NAMED_FAMILY_WORDS[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected one of {sorted(NAMED_FAMILY_WORDS)}") from None
    return tuple(apply_gamma(word(w), P0) for w in words)


def parse_family(text: str) -> tuple[ParabolicRep, ...]:
    """One ``n,p,q`` vector per line; blank lines and ``#`` comments ignored."""
    out = []
    for k, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(ParabolicRep.parse(line))
        except ValueError as exc:
            raise ValueError(f"line {k}: {exc}") from None
    if not out:
        raise ValueError("family file has no vectors")
    return tuple(out)


def format_family(fam: Iterable[ParabolicRep]) -> str:
    return "".join(f"{P}\n" for P in fam)


# ---------------------------------------------------------------------------
# first contact


class ConvergenceError(RuntimeError):
    pass


def _boundary_point(P: ParabolicRep) -> tuple[complex, float] | None:
    n, p, q = (complex(x) for x in P.v)
    if q == 0:
        return None
    return (-1j * p / q).conjugate(), (n / q).real


def _seeds(fam: Sequence[ParabolicRep], init: HoroPoint | None) -> list[np.ndarray]:
    if init is not None:
        c = init.coords()
    else:
        pts = [bp for bp in map(_boundary_point, fam) if bp is not None]
        beta = sum(b for b, _ in pts) / len(pts) if pts else 0j
        r = sum(r for _, r in pts) / len(pts) if pts else 0.0
        c = np.array([1.0, beta.real, beta.imag, r])
    offsets = [(0, 0, 0, 0), (0.1, 0.05, -0.05, 0.05), (-0.1, -0.05, 0.05, -0.05), (0.05, 0.1, 0.1, -0.1), (-0.05, -0.1, -0.1, 0.1)]
    return [c + np.array(o) for o in offsets]


def first_contact(
    fam: Sequence[ParabolicRep],
    init: HoroPoint | None = None,
    budget: int = 100_000,
    xtol: float = 1e-10,
    agree_tol: float = 1e-6,
) -> HoroPoint:
    """Maximize z -> min_P f_P(z) over the family with restarted Nelder-Mead.

    Each seed is re-run from its own optimum until the simplex stops moving;
    the best result across the five seeds wins.
    """
    fam = sort_family(fam)
    if not is_strongly_admissible(fam):
        raise ValueError("family is not strongly admissible")
    vecs = np.array([[complex(x) for x in P.v] for P in fam])

    def neg_min_f(x):
        y, br, bi, r = x
        if y <= 1e-6:
            return 1e3 - y
        b = complex(br, bi)
        n, p, q = vecs[:, 0], vecs[:, 1], vecs[:, 2]
        d = (
            np.abs(n - b * p + (0.5j * abs(b) ** 2 - r) * q) ** 2
            + y * y * np.abs(p - 1j * b.conjugate() * q) ** 2
            + y**4 * np.abs(q) ** 2
        )
        return -float(np.min(y / np.sqrt(d)))

    used = 0
    best = None
    for x in _seeds(fam, init):
        for _ in range(50):
            if used >= budget:
                break
            res = minimize(
                neg_min_f,
                x,
                method="Nelder-Mead",
                options={"xatol": xtol, "fatol": 1e-15, "maxfev": budget - used},
            )
            used += res.nfev
            moved = np.max(np.abs(res.x - x))
            x = res.x
            if moved < xtol:
                break
        if best is None or neg_min_f(x) < neg_min_f(best):
            best = x
    z = HoroPoint(best[0], complex(best[1], best[2]), best[3])
    vals = [f_exhaustion(P, z) for P in fam]
    if max(vals) - min(vals) > agree_tol:
        raise ConvergenceError(
            f"f-values disagree by {max(vals) - min(vals):.2e} after {used} evaluations"
        )
    return z


# ---------------------------------------------------------------------------
# moving cusps and points


def cusp_to_infinity(P: ParabolicRep) -> GMatrix:
    """Some g in Gamma with g P = P0.

    Descent on |q|^2: move the cusp's boundary point into the Siegel strip, where
    |n/q|^2 <= 1/4 + 1/4, then apply w, which swaps the roles of n and q.
    """
    w = GENERATORS["w"]
    g = IDENTITY
    v = P.v
    while v.q != ZERO:
        n, p, q = (complex(x) for x in v)
        _, _, h = reduce_heisenberg((-1j * p / q).conjugate(), (n / q).real)
        h = h.matrix()
        v = h @ v
        if 2 * v.n.norm() > v.q.norm():
            raise RuntimeError(f"cusp descent failed to shrink {v}")
        g = w @ h @ g
        v = w @ v
    return g


@lru_cache(maxsize=1)
def _low_cusps() -> tuple[ParabolicRep, ...]:
    return tuple(enumerate_isotropic(4))


def reduce_point(z: HoroPoint, tol: float = DEFAULT_TOL, max_steps: int = 500) -> tuple[HoroPoint, GMatrix]:
    """A Gamma-translate of z lying in D(P0) and in the Siegel strip.

    Greedy ascent: while some cusp from a small fixed list is higher than P0,
    send it to infinity (y strictly increases). The exhaustive argmax check
    runs only at the end, when y is no longer small and the search is cheap.
    Returns the point and an element g with act(g, z) equal to it.
    """
    z, h = siegel_reduce(z, tol)
    g = h.matrix()
    for _ in range(max_steps):
        top = max(_low_cusps(), key=lambda P: f_exhaustion(P, z))
        if f_exhaustion(top, z) <= z.y * (1 + 1e-12):
            full = argmax_parabolics(z, tol)
            if P0 in full:
                return z, g
            top = full[0]
        c = cusp_to_infinity(top)
        z, h = siegel_reduce(act(c, z), tol)
        g = h.matrix() @ c @ g
    raise RuntimeError(f"reduce_point did not settle within {max_steps} steps")

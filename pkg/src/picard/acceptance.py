"""The acceptance suite as plain functions.

Every expected value is rebuilt here from the constant tables in ``catalog``;
nothing is read back from earlier runs. ``run_all`` is shared by
``picard verify-propositions`` and ``tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import FIRST_CONTACT, FIXED_POINTS, PARABOLIC_ISOTROPY, TABLE1_CELL, TABLE1_ORDERS
from .config import RunConfig
from .elliptic import bounded_nonconjugacy, fixed_set, gamma_class, point_stabilizer, verify_table1
from .exhaustion import (
    admissibility_clause,
    apply_gamma,
    enumerate_isotropic,
    f_exhaustion,
    first_contact,
    in_spine,
    named_family,
    pairing_norm,
)
from .group import GENERATORS, is_gamma_member, random_word, word
from .horo import HoroPoint, act, gamma_of_beta0, in_siegel_strip, isotropy_generator, siegel_reduce
from .subgroups import closure

# Counts of canonical primitive isotropic vectors with entry norms <= h, from a
# naive scan (complex arithmetic, divisor brute force, explicit unit orbits;
# see scripts/brute_isotropic.py). Recorded once.
BRUTE_FORCE_ISOTROPIC_COUNTS = {1: 4, 2: 24, 4: 36}

TABLE1_LABELS = ("Z2",) * 5 + ("Z4", "Z4", "Z12", "Z2xZ4", "Z2", "G31", "S3", "Z8")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _timed(fn: Callable[[], tuple[bool, str, dict]]) -> tuple[bool, str, dict, float]:
    t0 = time.perf_counter()
    ok, detail, data = fn()
    return ok, detail, data, time.perf_counter() - t0


def _wrap(number: int, title: str, body, limit: float | None = None) -> CriterionResult:
    ok, detail, data, dt = _timed(body)
    if limit is not None:
        ok = ok and dt < limit
        detail += f", runtime limit {limit:g}s"
    return CriterionResult(number, title, ok, detail, dt, data)


def criterion_1(cfg: RunConfig) -> CriterionResult:
    def body():
        members = {name: is_gamma_member(g) for name, g in GENERATORS.items()}
        n = sum(members.values())
        return n == 6, f"{n}/6 members", {"members": members}

    return _wrap(1, "generator membership", body, limit=0.1)


def criterion_2(cfg: RunConfig) -> CriterionResult:
    def body():
        rows = verify_table1()
        orders = tuple(r["order"] for r in rows)
        labels = tuple(r["label"] for r in rows)
        ok = orders == TABLE1_ORDERS and labels == TABLE1_LABELS
        return ok, f"orders {orders}, labels {'/'.join(labels)}", {"rows": rows}

    return _wrap(2, "table of cell stabilizers", body, limit=2.0)


def criterion_3(cfg: RunConfig) -> CriterionResult:
    def body():
        errs = {}
        for label, (expected, _) in FIXED_POINTS.items():
            fs = fixed_set(gamma_class(label))
            errs[label] = fs.point.distance(expected) if fs.kind == "point" else math.inf
        worst = max(errs.values())
        return worst <= 1e-9, f"max coordinate error {worst:.1e} (tol 1e-9)", {"errors": errs}

    return _wrap(3, "isolated fixed points", body)


def criterion_4(cfg: RunConfig) -> CriterionResult:
    def body():
        pos_err, spread = {}, {}
        for name, expected in FIRST_CONTACT.items():
            fam = named_family(name)
            z = first_contact(fam, budget=cfg.optimizer_budget)
            vals = [f_exhaustion(P, z) for P in fam]
            pos_err[name] = z.distance(expected)
            spread[name] = max(vals) - min(vals)
        worst, wspread = max(pos_err.values()), max(spread.values())
        ok = worst <= 1e-6 and wspread <= 1e-6
        return ok, f"max coordinate error {worst:.1e}, max f spread {wspread:.1e} (tol 1e-6)", {
            "errors": pos_err,
            "spread": spread,
        }

    return _wrap(4, "first-contact optimizer", body, limit=30.0)


def criterion_5(cfg: RunConfig, n: int = 1000, seed: int = 5) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        cusps = [P for h in (1, 2, 3, 4) for P in enumerate_isotropic(h)]
        worst = 0.0
        for _ in range(n):
            _, g = random_word(rng, 6)
            P = cusps[int(rng.integers(len(cusps)))]
            z = HoroPoint(rng.uniform(0.5, 2.0), complex(*rng.uniform(-1, 1, 2)), rng.uniform(-1, 1))
            # f_{gP}(g z) = f_P(z), the same identity as f_{gP}(z) = f_P(g^-1 z)
            worst = max(worst, abs(f_exhaustion(apply_gamma(g, P), act(g, z)) - f_exhaustion(P, z)))
        return worst <= 1e-9, f"{n} triples, max deviation {worst:.1e} (tol 1e-9)", {"max_deviation": worst}

    return _wrap(5, "Gamma-invariance of f_P", body)


def criterion_6(cfg: RunConfig, n: int = 1000, seed: int = 6) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        outside = y_changed = 0
        worst = 0.0
        for _ in range(n):
            z = HoroPoint(rng.uniform(0.1, 5.0), complex(*rng.uniform(-5, 5, 2)), rng.uniform(-10, 10))
            zr, w = siegel_reduce(z)
            outside += not in_siegel_strip(zr)
            y_changed += zr.y != z.y
            worst = max(worst, act(w.matrix(), z).distance(zr))
        ok = outside == 0 and y_changed == 0 and worst <= 1e-9
        return ok, f"{n - outside}/{n} in strip, word error {worst:.1e}, y changed {y_changed}", {
            "outside": outside,
            "max_word_error": worst,
        }

    return _wrap(6, "Siegel reduction", body)


SPINE_CASES = (
    (HoroPoint(2.0, 0, 0.0), False),
    (HoroPoint(1.0, 0, 0.0), True),
    (HoroPoint((3 / 4) ** 0.25, 0, 0.5), True),
    (HoroPoint(2**-0.25, 1j, 0.5), True),
)


def criterion_7(cfg: RunConfig) -> CriterionResult:
    def body():
        got = [in_spine(z, 1e-6) for z, _ in SPINE_CASES]
        want = [w for _, w in SPINE_CASES]
        return got == want, f"got {got}", {"got": got}

    return _wrap(7, "spine membership", body)


def criterion_8(cfg: RunConfig) -> CriterionResult:
    expect = {"I2_1": (1, 2, None), "I3_1": (1, 2, None), "I3_2": (1, 2, None), "I2_2": (1, 2, None), "I8": (2, 4, 8)}

    def body():
        ok, parts = True, []
        for name, (clause, max_norm, size) in expect.items():
            fam = named_family(name)
            norms = max(pairing_norm(a, b) for a, b in itertools.product(fam, fam))
            c = admissibility_clause(fam)
            good = c == clause and norms <= max_norm and (size is None or len(set(fam)) == size)
            ok &= good
            parts.append(f"{name}:clause{c}/n{len(set(fam))}/max{norms}")
        return ok, " ".join(parts), {}

    return _wrap(8, "strong admissibility", body)


def criterion_9(cfg: RunConfig, n: int = 100, seed: int = 9) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        ew = GENERATORS["epsilon"] @ GENERATORS["w"]
        worst4 = 0.0
        for _ in range(n):
            b = math.sqrt(2) * 0.95 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            z = HoroPoint(math.sqrt(1 - abs(b) ** 2 / 2), b, 0.0)
            worst4 = max(worst4, act(ew, z).distance(z))
        surfaces = {"D1": (0j, word("eps")), "D2": (1j, word("xi^2")), "D3": ((1 + 1j) / 2, word("sigma eps^2"))}
        worst = {"D4": worst4}
        for name, (b0, g) in surfaces.items():
            e = 0.0
            for _ in range(n):
                z = HoroPoint(rng.uniform(0.2, 3.0), b0, rng.uniform(-2, 2))
                e = max(e, act(g, z).distance(z))
            worst[name] = e
        top = max(worst.values())
        return top <= 1e-9, f"max displacement {top:.1e} over D1..D4 (tol 1e-9)", {"displacement": worst}

    return _wrap(9, "fixed-surface sampling", body)


def criterion_10(cfg: RunConfig) -> CriterionResult:
    def body():
        parts, ok = [], True
        for b0, displayed in PARABOLIC_ISOTROPY.items():
            gen = isotropy_generator(b0)
            raw = gamma_of_beta0(b0)
            integral = bool(np.allclose(raw, np.round(raw.real) + 1j * np.round(raw.imag)))
            same = gen == displayed
            ok &= same
            how = "gamma" if integral else "gamma^2"
            parts.append(f"beta0={b0:g}:{how}:{'match' if same else 'MISMATCH'}")
        return ok, " ".join(parts), {}

    return _wrap(10, "parabolic isotropy generators", body)


def criterion_11(cfg: RunConfig) -> CriterionResult:
    def body():
        bound = cfg.entry_norm_bound
        r12 = bounded_nonconjugacy(gamma_class("Gamma_1"), gamma_class("Gamma_2"), bound)
        r34 = bounded_nonconjugacy(gamma_class("Gamma_3"), gamma_class("Gamma_4"), bound)
        ok = r12["conjugators_found"] == 0 and r34["conjugators_found"] == 0
        detail = f"G1~G2: {r12['verdict']}; G3~G4: {r34['verdict']}"
        if r34["conjugator"]:
            detail += f" ({r34['conjugators_found']} hits, e.g. {r34['conjugator']})"
        return ok, detail + f", bound {bound}", {"Gamma_1/Gamma_2": r12, "Gamma_3/Gamma_4": r34}

    return _wrap(11, "bounded non-conjugacy", body, limit=300.0)


def criterion_12(cfg: RunConfig) -> CriterionResult:
    def body():
        contained = {}
        for label, (z, cell) in FIXED_POINTS.items():
            expected = closure(TABLE1_CELL[cell].generators())
            stab = point_stabilizer(z, cfg.entry_norm_bound)
            contained[label] = expected.issubset(stab)
        counts = {h: len(enumerate_isotropic(h)) for h in BRUTE_FORCE_ISOTROPIC_COUNTS}
        ok = all(contained.values()) and counts == BRUTE_FORCE_ISOTROPIC_COUNTS
        return ok, f"stabilizers contain cells {sum(contained.values())}/5, isotropic counts {counts}", {
            "contained": contained,
            "counts": counts,
        }

    return _wrap(12, "oracle equivalence", body)


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
)


def run_all(cfg: RunConfig | None = None, only: set[int] | None = None) -> list[CriterionResult]:
    cfg = cfg or RunConfig()
    out = []
    for k, fn in enumerate(CRITERIA, 1):
        if only is None or k in only:
            out.append(fn(cfg))
    return out

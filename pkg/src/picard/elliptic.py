"""Fixed sets of finite subgroups, point stabilizers, and isotropy classification."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .catalog import GAMMA_CLASSES, TABLE1
from .exhaustion import apply_gamma, argmax_parabolics, cusp_to_infinity, in_spine, reduce_point
from .group import DEFAULT_ORDER_CAP, FORM_NP, IDENTITY, GMatrix, enumerate_gamma, mat_order
from .horo import HoroPoint, act, horo_to_vector, siegel_reduce, vector_to_horo
from .subgroups import SubgroupClosure, closure, identify

PIVOT_TOL = 1e-10
MIN_Y = 1e-6
DEFAULT_ENTRY_BOUND = 8


class AmbiguousClassification(RuntimeError):
    pass


def _roots_of_unity(m: int) -> list[complex]:
    out = []
    for k in range(m):
        lam = cmath.exp(2j * cmath.pi * k / m)
        # snap to exact values where they exist (+-1, +-i)
        out.append(complex(round(lam.real, 15), round(lam.imag, 15)))
    return out


def eigenlines(g: GMatrix, cap: int = DEFAULT_ORDER_CAP) -> list[tuple[complex, np.ndarray]]:
    """Eigenvalues of a finite-order g with bases of their eigenspaces.

    Candidate eigenvalues are the m-th roots of unity, m = order(g); each
    eigenspace is a numerical kernel at pivot tolerance 1e-10. Bases are the
    rows of the returned arrays.
    """
    m = mat_order(g, cap)
    if m is None:
        raise ValueError("eigenlines needs an element of finite order")
    a = g.to_numpy()
    out = []
    for lam in _roots_of_unity(m):
        ker = null_space(a - lam * np.eye(3), rcond=PIVOT_TOL)
        if ker.shape[1]:
            out.append((lam, ker.T))
    if sum(b.shape[0] for _, b in out) != 3:
        raise ArithmeticError("eigenspace dimensions do not add up to 3")
    return out


def _common_eigenspaces(gens: Sequence[GMatrix]) -> list[np.ndarray]:
    """Subspaces (row bases) on which every generator acts by a scalar."""
    spaces = [np.eye(3, dtype=complex)]
    for g in gens:
        a = g.to_numpy()
        roots = _roots_of_unity(mat_order(g))
        nxt = []
        for basis in spaces:
            b = basis.T  # columns span the subspace
            for lam in roots:
                ker = null_space((a - lam * np.eye(3)) @ b, rcond=PIVOT_TOL)
                if ker.shape[1]:
                    sub = b @ ker
                    q, _ = np.linalg.qr(sub)
                    nxt.append(q.T)
        spaces = nxt
    return spaces


def _qnorm(v: np.ndarray) -> float:
    return float((np.conj(v) @ FORM_NP @ v).real)


@dataclass(frozen=True)
class FixedSet:
    kind: str  # "empty" | "point" | "disk_surface"
    point: HoroPoint | None = None
    basis: np.ndarray | None = field(default=None, compare=False)  # rows: Q = +1 vector, Q = -1 vector

    def sample(self, n: int, rng: np.random.Generator, radius: float = 0.9) -> list[HoroPoint]:
        """Points of the fixed set; for a disk, images of a disc of the given radius."""
        if self.kind == "point":
            return [self.point] * n
        if self.kind != "disk_surface":
            return []
        pos, neg = self.basis
        out = []
        for _ in range(n):
            c = radius * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            out.append(vector_to_horo(pos + c * neg))
        return out

    def contains(self, z: HoroPoint, tol: float = 1e-9) -> bool:
        if self.kind == "point":
            return self.point.isclose(z, tol)
        if self.kind != "disk_surface":
            return False
        v = horo_to_vector(z)
        v = v / np.linalg.norm(v)
        b = self.basis.T
        coef, *_ = np.linalg.lstsq(b, v, rcond=None)
        return float(np.linalg.norm(b @ coef - v)) <= tol

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.point is not None:
            out["point"] = self.point.to_json()
        if self.basis is not None:
            out["basis"] = [[[x.real, x.imag] for x in row] for row in self.basis]
        return out


def fixed_set(s: SubgroupClosure) -> FixedSet:
    if s.order == 1:
        raise ValueError("the trivial group fixes all of D")
    for basis in _common_eigenspaces(s.generators):
        dim = basis.shape[0]
        if dim == 1:
            v = basis[0]
            if _qnorm(v) > PIVOT_TOL:
                return FixedSet("point", vector_to_horo(v))
        elif dim == 2:
            h = np.conj(basis) @ FORM_NP @ basis.T
            evals, evecs = np.linalg.eigh(h)
            if evals[-1] > PIVOT_TOL:
                pos = evecs[:, -1] @ basis / np.sqrt(evals[-1])
                neg = evecs[:, 0] @ basis / np.sqrt(-evals[0])
                pos = pos / pos[2] * abs(pos[2])  # fix the phase: third coordinate real positive
                return FixedSet("disk_surface", basis=np.array([pos, neg]))
        else:
            raise ValueError("group acts by scalars; fixed set is all of D")
    return FixedSet("empty")


# ---------------------------------------------------------------------------
# stabilizers


def _minimal_generators(elements: Sequence[GMatrix]) -> tuple[GMatrix, ...]:
    # try high-order elements first so cyclic groups come out with one generator
    gens: list[GMatrix] = []
    span: frozenset = frozenset({IDENTITY})
    for g in sorted(elements, key=lambda h: (-mat_order(h), h.key())):
        if g not in span:
            gens.append(g)
            span = closure(gens).element_set
    return tuple(gens)


def point_stabilizer(z: HoroPoint, entry_norm_bound: int = DEFAULT_ENTRY_BOUND, tol: float = 1e-8) -> SubgroupClosure:
    """Elements of Gamma with entries of norm <= bound fixing z, completed to a group.

    g fixes z iff g^-1 v = mu v with |mu| = 1 (v = vector of z), so every column
    satisfies |Q(g e_j, v)| = |Q(e_j, v)|. That prunes columns before the
    column-by-column search of ``enumerate_gamma``.
    """
    if z.y < MIN_Y:
        raise ValueError(f"point too close to the boundary (y = {z.y:.2e} < {MIN_Y})")
    if entry_norm_bound < 1:
        raise ValueError("entry_norm_bound must be >= 1")
    v = horo_to_vector(z)
    scale = float(np.linalg.norm(v))
    targets = np.abs(FORM_NP @ v)  # |Q(e_j, v)| = |(C v)_j|

    def column_filter(j, cols):
        vals = np.abs(np.conj(cols) @ FORM_NP @ v)
        return np.abs(vals - targets[j]) <= 1e-6 * scale * (1 + np.linalg.norm(cols, axis=1))

    fixing = []
    for g in enumerate_gamma(entry_norm_bound, column_filter):
        w = g.to_numpy() @ v
        if abs(w[2]) > 0 and np.max(np.abs(w / w[2] - v)) <= tol * scale:
            fixing.append(g)
    return closure(_minimal_generators(fixing))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class IsotropyClass:
    label: str  # "Gamma_1" .. "Gamma_9" or "trivial"
    structure: str
    generators: tuple[GMatrix, ...]
    point: HoroPoint
    reduced_point: HoroPoint
    reducing_element: GMatrix
    method: str

    def to_json(self, stab: SubgroupClosure | None = None) -> dict:
        return {
            "point": self.point.to_json(),
            "reduced_point": self.reduced_point.to_json(),
            "word": str(self.reducing_element),
            "stabilizer": {
                "order": stab.order if stab is not None else None,
                "label": self.structure,
                "generators": [str(g) for g in self.generators],
            },
            "class": self.label,
            "method": self.method,
        }


_STRUCTURE_TO_CLASS = {
    "trivial": "trivial",
    "Z12": "Gamma_5",
    "Z2xZ4": "Gamma_6",
    "G31": "Gamma_7",
    "S3": "Gamma_8",
    "Z8": "Gamma_9",
}


def on_catalog_set(z: HoroPoint, name: str, tol: float = 1e-8) -> bool:
    """Membership in D^1..D^4 for a Siegel-reduced point."""
    if name == "D1":
        return abs(z.beta) <= tol
    if name == "D2":
        return abs(z.beta - 1j) <= tol
    if name == "D3":
        return abs(z.beta - (1 + 1j) / 2) <= tol
    if name == "D4":
        return abs(z.y**2 + abs(z.beta) ** 2 / 2 - 1) <= tol and abs(z.r) <= tol
    raise ValueError(name)


def _cusp_fixed_views(z: HoroPoint, stab: SubgroupClosure, tol: float):
    """Reduced points obtained by sending each maximal cusp fixed by the whole
    stabilizer to P0; the stabilizer then lies in Gamma_P0."""
    for Q in argmax_parabolics(z, 1e-7):
        if all(apply_gamma(g, Q) == Q for g in stab.generators):
            c = cusp_to_infinity(Q)
            zq, h = siegel_reduce(act(c, z), tol)
            yield zq, h.matrix() @ c


def classify_point(
    z: HoroPoint,
    entry_norm_bound: int = DEFAULT_ENTRY_BOUND,
    tol: float = 1e-8,
) -> tuple[IsotropyClass, SubgroupClosure]:
    if z.y < MIN_Y:
        raise ValueError(f"point too close to the boundary (y = {z.y:.2e} < {MIN_Y})")
    zr, g = reduce_point(z, 1e-9)
    stab = point_stabilizer(zr, entry_norm_bound)
    structure = identify(stab)

    def result(label, method, point=zr, elem=g):
        return IsotropyClass(label, structure, stab.generators, z, point, elem, method), stab

    if structure in _STRUCTURE_TO_CLASS:
        return result(_STRUCTURE_TO_CLASS[structure], "structure")
    if structure not in ("Z4", "Z2"):
        raise AmbiguousClassification(f"stabilizer of {zr} has unrecognized structure {structure}")

    views = [(zr, g)] + [(zq, hq @ g) for zq, hq in _cusp_fixed_views(zr, stab, 1e-9)]
    for zv, gv in views:
        if structure == "Z4":
            if on_catalog_set(zv, "D1", tol):
                return result("Gamma_1", "catalog D1", zv, gv)
            if on_catalog_set(zv, "D2", tol):
                return result("Gamma_2", "catalog D2", zv, gv)
        else:
            if on_catalog_set(zv, "D3", tol):
                return result("Gamma_3", "catalog D3", zv, gv)
            if on_catalog_set(zv, "D4", tol):
                return result("Gamma_4", "catalog D4", zv, gv)
    if structure == "Z2" and in_spine(zr, 1e-7):
        # every order-2 spine-cell stabilizer is conjugate to <eps w>
        return result("Gamma_4", "spine")
    raise AmbiguousClassification(
        f"stabilizer {structure} found at {zr}, but the point lies on no catalog fixed set"
    )


# ---------------------------------------------------------------------------
# table and conjugacy checks


def verify_table1() -> list[dict]:
    rows = []
    for row in TABLE1:
        s = closure(row.generators())
        label = identify(s)
        rows.append(
            {
                "cell": row.cell,
                "generators": list(row.words),
                "order": s.order,
                "label": label,
                "expected": row.structure,
                "pass": label == row.structure,
            }
        )
    return rows


@lru_cache(maxsize=4)
def _gamma_ball(bound: int) -> tuple[tuple[GMatrix, ...], np.ndarray]:
    els = tuple(enumerate_gamma(bound))
    return els, np.array([g.to_numpy() for g in els])


def _int_key(m: np.ndarray) -> tuple[int, ...]:
    return tuple(np.rint(np.stack([m.real, m.imag], axis=-1)).astype(int).ravel())


def bounded_nonconjugacy(a: SubgroupClosure, b: SubgroupClosure, entry_norm_bound: int = DEFAULT_ENTRY_BOUND) -> dict:
    """Search g in Gamma with entry norms <= bound and g a g^-1 = b.

    Only bounded evidence: finding nothing does not prove non-conjugacy.
    """
    if a.order != b.order or identify(a) != identify(b):
        raise ValueError("subgroups differ in order or structure; they are trivially non-conjugate")
    els, mats = _gamma_ball(entry_norm_bound)
    inv = FORM_NP @ np.conj(np.transpose(mats, (0, 2, 1))) @ FORM_NP  # g^-1 = C g* C
    targets = {_int_key(x.to_numpy()) for x in b.elements}
    ok = np.ones(len(els), dtype=bool)
    for x in a.generators:
        conj = mats @ x.to_numpy() @ inv
        ok &= np.array([_int_key(c) in targets for c in conj])
    hits = [els[k] for k in np.nonzero(ok)[0]]
    return {
        "entry_norm_bound": entry_norm_bound,
        "searched": len(els),
        "conjugators_found": len(hits),
        "conjugator": str(min(hits, key=lambda g: (g != IDENTITY, g.max_norm(), g.key()))) if hits else None,
        "verdict": "conjugator found" if hits else "no conjugator within bound",
    }


def gamma_class(label: str) -> SubgroupClosure:
    return closure(GAMMA_CLASSES[label].generators())

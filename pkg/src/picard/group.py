"""3x3 matrices over Z[i], the Hermitian form Q(u, v) = u* C v, and the
Picard modular group Gamma = SU(2,1; Z[i]).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .gaussian import ONE, ZERO, GaussInt, GaussVec3, I, gaussian_integers

DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True, slots=True)
class GMatrix:
    """Row-major 3x3 matrix over Z[i]."""

    entries: tuple[GaussInt, ...]

    def __post_init__(self):
        if len(self.entries) != 9:
            raise ValueError("a GMatrix has exactly nine entries")

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> GMatrix:
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 array")
        return cls(tuple(GaussInt.of(x) for r in rows for x in r))

    @classmethod
    def from_numpy(cls, a: np.ndarray) -> GMatrix:
        return cls(tuple(GaussInt.of(complex(x)) for x in np.asarray(a).reshape(9)))

    @classmethod
    def parse(cls, text: str) -> GMatrix:
        """Parse ``"a,b,c;d,e,f;g,h,k"`` with Gaussian-integer entries."""
        rows = text.split(";")
        if len(rows) != 3:
            raise ValueError(f"expected three ';'-separated rows in {text!r}")
        out = []
        for k, row in enumerate(rows):
            cells = row.split(",")
            if len(cells) != 3:
                raise ValueError(f"row {k + 1} of {text!r} does not have three entries")
            for j, cell in enumerate(cells):
                try:
                    out.append(GaussInt.parse(cell))
                except ValueError as exc:
                    raise ValueError(f"entry ({k + 1},{j + 1}): {exc}") from None
        return cls(tuple(out))

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in self.row(k)) for k in range(3))

    def __getitem__(self, ij: tuple[int, int]) -> GaussInt:
        i, j = ij
        return self.entries[3 * i + j]

    def row(self, i: int) -> tuple[GaussInt, ...]:
        return self.entries[3 * i : 3 * i + 3]

    def col(self, j: int) -> GaussVec3:
        return GaussVec3(*self.entries[j::3])

    def rows(self) -> list[list[GaussInt]]:
        return [list(self.row(i)) for i in range(3)]

    def __matmul__(self, other):
        if isinstance(other, GaussVec3):
            x = tuple(other)
            return GaussVec3(*(sum((self[i, k] * x[k] for k in range(3)), ZERO) for i in range(3)))
        if not isinstance(other, GMatrix):
            return NotImplemented
        a, b = self.entries, other.entries
        return GMatrix(
            tuple(
                a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
                for i in range(3)
                for j in range(3)
            )
        )

    def __pow__(self, k: int) -> GMatrix:
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = IDENTITY
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def det(self) -> GaussInt:
        m = self
        return (
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )

    def adjugate(self) -> GMatrix:
        m = self

        def cof(i, j):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            d = m[r[0], c[0]] * m[r[1], c[1]] - m[r[0], c[1]] * m[r[1], c[0]]
            return d if (i + j) % 2 == 0 else -d

        return GMatrix(tuple(cof(j, i) for i in range(3) for j in range(3)))

    def inv(self) -> GMatrix:
        if self.det() != ONE:
            raise ValueError("mat_inv requires det = 1")
        return self.adjugate()

    def star(self) -> GMatrix:
        """Conjugate transpose."""
        return GMatrix(tuple(self[j, i].conj() for i in range(3) for j in range(3)))

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(x) for x in self.entries], dtype=complex).reshape(3, 3)

    def max_norm(self) -> int:
        return max(x.norm() for x in self.entries)

    def key(self) -> tuple[int, ...]:
        """Lexicographic sort key on row-major (re, im) pairs."""
        return tuple(c for x in self.entries for c in x.key())


def mat_mul(a: GMatrix, b: GMatrix) -> GMatrix:
    return a @ b


def mat_inv(g: GMatrix) -> GMatrix:
    return g.inv()


IDENTITY = GMatrix.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
FORM = GMatrix.of([[0, 0, I], [0, -1, 0], [-I, 0, 0]])
FORM_NP = FORM.to_numpy()


def form_q(u, v):
    """Q(u, v) = u* C v.

    Exact (a GaussInt) for two GaussVec3 arguments, complex otherwise.
    """
    if isinstance(u, GaussVec3) and isinstance(v, GaussVec3):
        # C v = (i v3, -v2, -i v1)
        n1, p1, q1 = u
        n2, p2, q2 = v
        return n1.conj() * (I * q2) - p1.conj() * p2 - q1.conj() * (I * n2)
    u = np.asarray(u.to_complex() if isinstance(u, GaussVec3) else u, dtype=complex)
    v = np.asarray(v.to_complex() if isinstance(v, GaussVec3) else v, dtype=complex)
    return complex(np.conj(u) @ FORM_NP @ v)


def is_gamma_member(g: GMatrix) -> bool:
    return g.det() == ONE and g.star() @ FORM @ g == FORM


def mat_order(g: GMatrix, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Least k <= cap with g^k = I, or None."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    h = g
    for k in range(1, cap + 1):
        if h == IDENTITY:
            return k
        h = h @ g
    return None


# ---------------------------------------------------------------------------
# generator catalog and words

GENERATORS: dict[str, GMatrix] = {
    "w": GMatrix.of([[0, 0, -1], [0, 1, 0], [1, 0, 0]]),
    "sigma": GMatrix.of([[1, 1 + 1j, 1j], [0, 1, 1 + 1j], [0, 0, 1]]),
    "sigma_check": GMatrix.of([[1, -1 + 1j, 1j], [0, 1, 1 - 1j], [0, 0, 1]]),
    "tau": GMatrix.of([[1, 0, 1], [0, 1, 0], [0, 0, 1]]),
    "epsilon": GMatrix.of([[1j, 0, 0], [0, -1, 0], [0, 0, 1j]]),
    "xi": GMatrix.of([[1, -1 - 1j, 1j], [1 - 1j, -1, 0], [1 - 1j, -1 - 1j, 1j]]),
}

_ALIASES = {
    "eps": "epsilon",
    "e": "epsilon",
    "sigmacheck": "sigma_check",
    "sigmac": "sigma_check",
    "s": "sigma",
    "t": "tau",
}

_TOKEN_RE = re.compile(r"^(?P<name>[a-z_]+)(?:\^(?P<pow>-?\d+))?(?P<inv>~)?$")


def generator(name: str) -> GMatrix:
    key = _ALIASES.get(name, name)
    try:
        return GENERATORS[key]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; expected one of {sorted(GENERATORS)}") from None


def parse_word(text: str) -> list[tuple[str, int]]:
    """Split a word like ``"tau.eps^2.w~"`` or ``"tau eps w"`` into (name, power) pairs."""
    tokens = [t for t in re.split(r"[\s.*]+", text.strip()) if t]
    out = []
    for pos, tok in enumerate(tokens, 1):
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ValueError(f"token {pos} of word {text!r} is malformed: {tok!r}")
        name = _ALIASES.get(m.group("name"), m.group("name"))
        if name != "id" and name not in GENERATORS:
            raise ValueError(f"token {pos} of word {text!r}: unknown generator {m.group('name')!r}")
        k = int(m.group("pow") or 1)
        if m.group("inv"):
            k = -k
        out.append((name, k))
    return out


def word(text: str) -> GMatrix:
    """Evaluate a word in the named generators as the left-to-right product."""
    g = IDENTITY
    for name, k in parse_word(text):
        if name != "id":
            g = g @ generator(name) ** k
    return g


def parse_element(text: str) -> GMatrix:
    """A group element given either as a word or in matrix text format."""
    return GMatrix.parse(text) if ";" in text else word(text)


# ---------------------------------------------------------------------------
# bounded enumeration of Gamma by columns


@lru_cache(maxsize=8)
def _bounded_vectors(bound: int) -> np.ndarray:
    gs = [complex(z) for z in gaussian_integers(bound)]
    return np.array(list(itertools.product(gs, repeat=3)), dtype=complex)


def _qform_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise Q(a_k, b_k)."""
    return np.einsum("ki,ij,kj->k", a.conj(), FORM_NP, b)


def enumerate_gamma(
    bound: int,
    column_filter: Callable[[int, np.ndarray], np.ndarray] | None = None,
) -> list[GMatrix]:
    """All g in Gamma whose entries have norm <= ``bound``.

    Columns c_1, c_2, c_3 of g satisfy Q(c_i, c_j) = C_ij. We pick isotropic c_1
    and c_3 with Q(c_1, c_3) = i; then c_2 is forced: it is Q-orthogonal to both,
    so proportional to conj(C c_1) x conj(C c_3), and det g = 1 fixes the scale.
    ``column_filter(j, cols)`` may prune candidate columns (j = 0, 1, 2) further,
    returning a boolean mask.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    vecs = _bounded_vectors(bound)
    iso = vecs[np.abs(_qform_rows(vecs, vecs)) < 0.5]
    iso = iso[np.any(iso != 0, axis=1)]
    c1 = iso if column_filter is None else iso[column_filter(0, iso)]
    c3 = iso if column_filter is None else iso[column_filter(2, iso)]
    if len(c1) == 0 or len(c3) == 0:
        return []
    gram = np.conj(c1) @ FORM_NP @ c3.T
    i1, i3 = np.nonzero(np.abs(gram - 1j) < 0.5)
    a, b = c1[i1], c3[i3]
    cross = np.cross(np.conj(a @ FORM_NP.T), np.conj(b @ FORM_NP.T))
    mats = np.stack([a, cross, b], axis=2)
    d = np.linalg.det(mats)
    ok = np.abs(d) > 0.5
    c2 = np.zeros_like(cross)
    c2[ok] = cross[ok] / d[ok, None]
    rounded = np.round(c2.real) + 1j * np.round(c2.imag)
    ok &= np.all(np.abs(c2 - rounded) < 1e-6, axis=1)
    ok &= np.all(np.abs(rounded) ** 2 <= bound + 0.5, axis=1)
    if column_filter is not None and ok.any():
        idx = np.nonzero(ok)[0]
        ok[idx] = column_filter(1, rounded[idx])
    found = []
    for k in np.nonzero(ok)[0]:
        g = GMatrix.from_numpy(np.stack([a[k], rounded[k], b[k]], axis=1))
        if is_gamma_member(g):
            found.append(g)
    found.sort(key=GMatrix.key)
    return found


def random_word(rng, max_len: int, names: Iterable[str] = tuple(GENERATORS)) -> tuple[str, GMatrix]:
    """A random word of length 0..max_len in the generators and their inverses."""
    names = list(names)
    n = int(rng.integers(0, max_len + 1))
    toks, g = [], IDENTITY
    for _ in range(n):
        name = names[int(rng.integers(len(names)))]
        k = 1 if rng.random() < 0.5 else -1
        toks.append(name if k == 1 else name + "~")
        g = g @ GENERATORS[name] ** k
    return " ".join(toks) or "id", g


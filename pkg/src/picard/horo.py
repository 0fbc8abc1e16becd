"""Horospherical coordinates (y, beta, r) on complex hyperbolic 2-space and the
action of Gamma on them.

Points of D are complex lines in C^3 on which Q is positive. The form matrix C
has spectrum {+1, -1, -1}; the base point x0 is the +1 eigenline spanned by
(i, 0, 1). A point z = (y, beta, r) is u(beta, r) a(y) x0, which after scaling
the last coordinate to 1 is the vector

    (i y^2 + r + i |beta|^2 / 2,  i conj(beta),  1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .group import GENERATORS, IDENTITY, GMatrix

DEFAULT_TOL = 1e-9


class BoundaryError(ValueError):
    """The vector does not represent a point of D in the P0 chart."""


@dataclass(frozen=True)
class HoroPoint:
    y: float
    beta: complex
    r: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"horospherical y must be positive, got {self.y}")
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "r", float(self.r))

    def coords(self) -> np.ndarray:
        return np.array([self.y, self.beta.real, self.beta.imag, self.r])

    def distance(self, other: HoroPoint) -> float:
        """Largest coordinate difference; not a metric on D."""
        return float(np.max(np.abs(self.coords() - other.coords())))

    def isclose(self, other: HoroPoint, tol: float = DEFAULT_TOL) -> bool:
        return self.distance(other) <= tol

    def to_json(self) -> dict:
        return {"y": self.y, "beta": [self.beta.real, self.beta.imag], "r": self.r}

    @classmethod
    def from_json(cls, d: dict) -> HoroPoint:
        b = d["beta"]
        beta = complex(b[0], b[1]) if isinstance(b, (list, tuple)) else complex(b)
        return cls(float(d["y"]), beta, float(d["r"]))


@dataclass(frozen=True)
class ParabolicParams:
    """Langlands data of p = u(beta, r) a(y) m(zeta) in P0."""

    y: float
    zeta: complex
    beta: complex
    r: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("y must be positive")
        if abs(abs(self.zeta) - 1) > 1e-12:
            raise ValueError("zeta must have modulus 1")

    def matrix(self) -> np.ndarray:
        y, z, b, r = self.y, complex(self.zeta), complex(self.beta), self.r
        return np.array(
            [
                [y * z, b * z**-2, z * (r + 1j * abs(b) ** 2 / 2) / y],
                [0, z**-2, 1j * b.conjugate() * z / y],
                [0, 0, z / y],
            ],
            dtype=complex,
        )

    @classmethod
    def from_matrix(cls, g) -> ParabolicParams:
        m = g.to_numpy() if isinstance(g, GMatrix) else np.asarray(g, dtype=complex)
        if np.max(np.abs(np.tril(m, -1))) > 1e-12:
            raise ValueError("matrix is not upper triangular, so not in P0")
        zeta_over_y = m[2, 2]
        y = abs(m[0, 0])
        zeta = m[0, 0] / y
        if abs(zeta_over_y - zeta / y) > 1e-9 * max(1.0, abs(zeta_over_y)):
            raise ValueError("matrix does not have the P0 shape")
        beta = m[0, 1] * zeta**2
        r = (m[0, 2] * y / zeta).real
        return cls(y, zeta, beta, r)


def base_vector() -> np.ndarray:
    return np.array([1j, 0, 1], dtype=complex)


def horo_to_vector(z: HoroPoint) -> np.ndarray:
    y, b, r = z.y, z.beta, z.r
    return np.array([1j * y * y + r + 0.5j * abs(b) ** 2, 1j * b.conjugate(), 1], dtype=complex)


def vector_to_horo(v: Sequence[complex]) -> HoroPoint:
    v = np.asarray(v, dtype=complex)
    if abs(v[2]) <= 1e-14 * max(1.0, float(np.max(np.abs(v)))):
        raise BoundaryError("third coordinate vanishes: the line is not in the P0 chart")
    t = v / v[2]
    beta = (-1j * t[1]).conjugate()
    y2 = t[0].imag - abs(beta) ** 2 / 2
    if not y2 > 0:
        raise BoundaryError(f"vector is not in D (y^2 = {y2:.3g} <= 0)")
    return HoroPoint(math.sqrt(y2), beta, t[0].real)


def _as_array(g) -> np.ndarray:
    return g.to_numpy() if isinstance(g, GMatrix) else np.asarray(g, dtype=complex)


def act(g, z: HoroPoint) -> HoroPoint:
    """Left action of a group element (GMatrix or complex array) on D."""
    return vector_to_horo(_as_array(g) @ horo_to_vector(z))


def act_parabolic(p: ParabolicParams, z: HoroPoint) -> HoroPoint:
    y, zeta, b, r = p.y, complex(p.zeta), complex(p.beta), p.r
    z3 = zeta**3
    return HoroPoint(
        y * z.y,
        y * z3 * z.beta + b,
        y * y * z.r + r - (b * z.beta.conjugate() / z3 * y).imag,
    )


def fixed_point_conditions(zeta: complex, beta0: complex) -> tuple[complex, float]:
    """(beta, r) such that p = u(beta, r) m(zeta) fixes every (y0, beta0, r0)."""
    zeta = complex(zeta)
    beta0 = complex(beta0)
    return beta0 * (1 - zeta**3), abs(beta0) ** 2 * (zeta**-3).imag


def gamma_of_beta0(beta0: complex) -> np.ndarray:
    """The element u m(i) of P0 fixing the vertical line beta = beta0."""
    b = complex(beta0)
    return np.array(
        [
            [1j, -(1 + 1j) * b, -(1 - 1j) * abs(b) ** 2],
            [0, -1, -(1 - 1j) * b.conjugate()],
            [0, 0, 1j],
        ],
        dtype=complex,
    )


def isotropy_generator(beta0: complex) -> GMatrix | None:
    """Generator of {I, gamma, gamma^2, gamma^3} intersected with Gamma."""
    g = gamma_of_beta0(beta0)
    for k in (1, 2):
        m = np.linalg.matrix_power(g, k)
        rounded = np.round(m.real) + 1j * np.round(m.imag)
        if np.max(np.abs(m - rounded)) < 1e-9:
            return GMatrix.from_numpy(rounded)
    return None


# ---------------------------------------------------------------------------
# Siegel strip

SIEGEL_TOKENS = ("tau", "tau~", "sigma", "sigma~", "sigmacheck", "sigmacheck~", "eps", "eps~")
_TOKEN_MATRIX = {
    "tau": GENERATORS["tau"],
    "sigma": GENERATORS["sigma"],
    "sigmacheck": GENERATORS["sigma_check"],
    "eps": GENERATORS["epsilon"],
}


@dataclass(frozen=True)
class SiegelWord:
    tokens: tuple[str, ...] = ()

    def __post_init__(self):
        for t in self.tokens:
            if t not in SIEGEL_TOKENS:
                raise ValueError(f"bad Siegel word token {t!r}")

    @classmethod
    def parse(cls, text: str) -> SiegelWord:
        return cls(tuple(text.split()))

    def __str__(self) -> str:
        return " ".join(self.tokens)

    def matrix(self) -> GMatrix:
        g = IDENTITY
        for t in self.tokens:
            m = _TOKEN_MATRIX[t.rstrip("~")]
            g = g @ (m.inv() if t.endswith("~") else m)
        return g

    def __add__(self, other: SiegelWord) -> SiegelWord:
        return SiegelWord(self.tokens + other.tokens)


def _power_tokens(name: str, k: int) -> tuple[str, ...]:
    return (name if k > 0 else name + "~",) * abs(k)


def _diamond_coords(beta: complex) -> tuple[float, float]:
    # u runs from 0 towards (1+i)/2, v from 0 towards (-1+i)/2; the square is [0,1]^2.
    return beta.real + beta.imag, beta.imag - beta.real


def in_diamond(beta: complex, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the square with vertices 0, (1+i)/2, i, (-1+i)/2.

    Boundary convention: the closed edges [0, (1+i)/2] and [(1+i)/2, i] are in,
    the other two edges are out except for their endpoints 0 and i. The edges
    [0, (-1+i)/2] and [i, (-1+i)/2] are the images of the included ones under the
    quarter-turns about 0 and about i, so each orbit has one representative.
    """
    beta = complex(beta)
    if abs(beta) <= tol or abs(beta - 1j) <= tol:
        return True
    u, v = _diamond_coords(beta)
    return tol < u <= 1 + tol and -tol <= v < 1 - tol


def in_siegel_strip(z: HoroPoint, tol: float = DEFAULT_TOL) -> bool:
    return -0.5 + tol < z.r <= 0.5 + tol and in_diamond(z.beta, tol)


def _beta_candidates(beta: complex) -> Iterable[tuple[int, int, int, complex]]:
    # beta -> (-i)^c beta + a (1+i) + b (-1+i), the beta-part of sigma^a sigmacheck^b eps^c
    for c in range(4):
        bc = (-1j) ** c * beta
        u, v = _diamond_coords(bc)
        a0, b0 = math.floor(-u / 2), math.floor(-v / 2)
        for a in range(a0 - 1, a0 + 3):
            for b in range(b0 - 1, b0 + 3):
                yield a, b, c, bc + a * (1 + 1j) + b * (-1 + 1j)


def reduce_heisenberg(beta: complex, r: float, tol: float = DEFAULT_TOL) -> tuple[complex, float, SiegelWord]:
    """Move (beta, r) into the strip using Gamma_P0 (y plays no role).

    Works for boundary points of D as well as interior ones.
    """
    cands = [t for t in _beta_candidates(complex(beta)) if in_diamond(t[3], tol)]
    if not cands:
        # numerically on an excluded edge at every image; fall back to the nearest
        def miss(t):
            u, v = _diamond_coords(t[3])
            return max(-u, u - 1, -v, v - 1, 0.0)

        cands = [min(_beta_candidates(complex(beta)), key=miss)]
    a, b, c, _ = min(cands, key=lambda t: (abs(t[0]) + abs(t[1]), t[2], t[0], t[1]))
    word = SiegelWord(_power_tokens("sigma", a) + _power_tokens("sigmacheck", b) + _power_tokens("eps", c))
    p = ParabolicParams.from_matrix(word.matrix())
    moved = act_parabolic(p, HoroPoint(1.0, beta, r))
    k = math.ceil(moved.r - 0.5 - tol)
    word = SiegelWord(_power_tokens("tau", -k)) + word
    p = ParabolicParams.from_matrix(word.matrix())
    out = act_parabolic(p, HoroPoint(1.0, beta, r))
    return out.beta, out.r, word


def siegel_reduce(z: HoroPoint, tol: float = DEFAULT_TOL) -> tuple[HoroPoint, SiegelWord]:
    """A Gamma_P0-translate of z in the Siegel strip, and the word that moves it there.

    Elements of Gamma_P0 have y-parameter 1, so y is returned unchanged.
    """
    beta, r, word = reduce_heisenberg(z.beta, z.r, tol)
    return HoroPoint(z.y, beta, r), word


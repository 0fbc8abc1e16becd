"""Reference data: stabilizers of the representative spine cells, the nine
isotropy classes, and the isolated fixed points."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group import GMatrix, word
from .horo import HoroPoint


@dataclass(frozen=True)
class CellRow:
    cell: str
    dimension: int
    structure: str
    words: tuple[str, ...]

    def generators(self) -> tuple[GMatrix, ...]:
        return tuple(word(w) for w in self.words)


TABLE1 = (
    CellRow("[1,2,3,4,5,6]", 2, "Z2", ("eps w",)),
    CellRow("[5,11]", 1, "Z2", ("sigma eps w sigma~",)),
    CellRow("[5,6]", 1, "Z2", ("eps w",)),
    CellRow("[1,6]", 1, "Z2", ("eps w",)),
    CellRow("[1,2]", 1, "Z2", ("eps w",)),
    CellRow("[2,8]", 1, "Z4", ("eps",)),
    CellRow("[1,12]", 1, "Z4", ("xi^2",)),
    CellRow("[8]", 0, "Z12", ("tau eps w",)),
    CellRow("[2]", 0, "Z2xZ4", ("eps w", "eps")),
    CellRow("[6]", 0, "Z2", ("eps w",)),
    CellRow("[1]", 0, "G31", ("eps w", "xi^2")),
    CellRow("[5]", 0, "S3", ("eps w", "sigma eps^2")),
    CellRow("[12]", 0, "Z8", ("xi",)),
)

TABLE1_ORDERS = (2, 2, 2, 2, 2, 4, 4, 12, 8, 2, 32, 6, 8)


@dataclass(frozen=True)
class IsotropyClassSpec:
    label: str
    structure: str
    words: tuple[str, ...]

    def generators(self) -> tuple[GMatrix, ...]:
        return tuple(word(w) for w in self.words)


GAMMA_CLASSES = {
    "Gamma_1": IsotropyClassSpec("Gamma_1", "Z4", ("eps",)),
    "Gamma_2": IsotropyClassSpec("Gamma_2", "Z4", ("xi^2",)),
    "Gamma_3": IsotropyClassSpec("Gamma_3", "Z2", ("sigma eps^2",)),
    "Gamma_4": IsotropyClassSpec("Gamma_4", "Z2", ("eps w",)),
    "Gamma_5": IsotropyClassSpec("Gamma_5", "Z12", ("tau eps w",)),
    "Gamma_6": IsotropyClassSpec("Gamma_6", "Z2xZ4", ("eps w", "eps")),
    "Gamma_7": IsotropyClassSpec("Gamma_7", "G31", ("eps w", "xi^2")),
    "Gamma_8": IsotropyClassSpec("Gamma_8", "S3", ("eps w", "sigma eps^2")),
    "Gamma_9": IsotropyClassSpec("Gamma_9", "Z8", ("xi",)),
}

# Isolated fixed points of Gamma_5 .. Gamma_9, with the spine cell they stabilize.
FIXED_POINTS = {
    "Gamma_5": (HoroPoint((3 / 4) ** 0.25, 0, 0.5), "[8]"),
    "Gamma_6": (HoroPoint(1.0, 0, 0.0), "[2]"),
    "Gamma_7": (HoroPoint(1 / math.sqrt(2), 1j, 0.0), "[1]"),
    "Gamma_8": (HoroPoint(math.sqrt(3) / 2, (1 + 1j) / 2, 0.0), "[5]"),
    "Gamma_9": (HoroPoint(2**-0.25, 1j, 0.5), "[12]"),
}

# First-contact points of the named cusp families.
FIRST_CONTACT = {
    "I3_1": FIXED_POINTS["Gamma_5"][0],
    "I2_1": FIXED_POINTS["Gamma_6"][0],
    "I8": FIXED_POINTS["Gamma_7"][0],
    "I3_2": FIXED_POINTS["Gamma_8"][0],
    "I2_2": FIXED_POINTS["Gamma_9"][0],
}

# Generators of the isotropy groups of (y, beta0, r) inside Gamma_P0.
PARABOLIC_ISOTROPY = {
    0j: GMatrix.of([[1j, 0, 0], [0, -1, 0], [0, 0, 1j]]),
    1j: GMatrix.of([[1j, 1 - 1j, -1 + 1j], [0, -1, 1 + 1j], [0, 0, 1j]]),
    (1 + 1j) / 2: GMatrix.of([[-1, 1 + 1j, -1j], [0, 1, -1 - 1j], [0, 0, -1]]),
}

TABLE1_CELL = {row.cell: row for row in TABLE1}

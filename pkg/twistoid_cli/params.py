"""
Parameter records of the twistoid families.

All fields are integers; the geometric parameters are recovered by the
documented scalings (p = P/2 or P/4, q = Q/2, c = N*sqrt2/2, c = M/sqrt3).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Union


class ManifoldKind(str, Enum):
    DICOSM_AXIAL = "dicosm-axial"
    DICOSM_DIAGONAL = "dicosm-diagonal"
    TRICOSM = "tricosm"
    TETRACOSM = "tetracosm"
    HEXACOSM = "hexacosm"


@dataclass(frozen=True, order=True)
class DicosmAxialParams:
    """Half-turn axes parallel to e3; c = C, p_i = P_i/2, q3 = Q3/2"""

    C: int
    P1: int
    P2: int
    P3: int
    Q3: int

    kind = ManifoldKind.DICOSM_AXIAL

    def display(self) -> dict[str, str]:
        half = Fraction(1, 2)
        return {
            "c": str(self.C),
            "p1": str(self.P1 * half),
            "p2": str(self.P2 * half),
            "p3": str(self.P3 * half),
            "q3": str(self.Q3 * half),
        }


@dataclass(frozen=True, order=True)
class DicosmDiagonalParams:
    """Half-turn axes parallel to e1-e2; c = N*sqrt2/2, p_i = P_i/4, q3 = Q3/2"""

    N: int
    P1: int
    P2: int
    P3: int
    Q3: int

    kind = ManifoldKind.DICOSM_DIAGONAL

    def display(self) -> dict[str, str]:
        quarter = Fraction(1, 4)
        return {
            "c": f"{self.N}*sqrt2/2",
            "p1": str(self.P1 * quarter),
            "p2": str(self.P2 * quarter),
            "p3": str(self.P3 * quarter),
            "q3": str(Fraction(self.Q3, 2)),
        }


@dataclass(frozen=True, order=True)
class TricosmParams:
    """3-fold axes parallel to e1+e2+e3; c = M/sqrt3, second axis offset a*v1 + b*v2"""

    M: int
    a: int
    b: int

    kind = ManifoldKind.TRICOSM

    def display(self) -> dict[str, str]:
        return {"c": f"{self.M}/sqrt3", "a": str(self.a), "b": str(self.b)}


@dataclass(frozen=True, order=True)
class TetracosmParams:
    """4-fold axes parallel to e3; c = C, half-turn axis through (P/2, Q/2)"""

    C: int
    P: int
    Q: int

    kind = ManifoldKind.TETRACOSM

    def display(self) -> dict[str, str]:
        return {"c": str(self.C), "p": str(Fraction(self.P, 2)), "q": str(Fraction(self.Q, 2))}


@dataclass(frozen=True, order=True)
class HexacosmParams:
    """Request for a twistoid on the hexacosm; never constructible"""

    C: int = 1

    kind = ManifoldKind.HEXACOSM

    def display(self) -> dict[str, str]:
        return {"c": str(self.C)}


TwistoidParams = Union[
    DicosmAxialParams, DicosmDiagonalParams, TricosmParams, TetracosmParams, HexacosmParams
]

PARAMS_BY_KIND: dict[ManifoldKind, type] = {
    ManifoldKind.DICOSM_AXIAL: DicosmAxialParams,
    ManifoldKind.DICOSM_DIAGONAL: DicosmDiagonalParams,
    ManifoldKind.TRICOSM: TricosmParams,
    ManifoldKind.TETRACOSM: TetracosmParams,
    ManifoldKind.HEXACOSM: HexacosmParams,
}


def encoding(params: TwistoidParams) -> dict[str, int]:
    return asdict(params)

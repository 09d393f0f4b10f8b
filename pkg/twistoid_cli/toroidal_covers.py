"""
Minimal toroidal covers: the 3-torus tessellation U/L covering U/G, where L
is the translation subgroup of G.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .exact_geometry import ALL_SIGNED_PERMS, InternalInconsistency, SignedPerm, Vec3
from .lattice import hermite_normal_form, lattice_contains, lattice_index
from .params import DicosmAxialParams, DicosmDiagonalParams, TetracosmParams, TricosmParams, TwistoidParams
from .platycosm_groups import build_group, translation_lattice
from .twistoid_classifier import DeformableClass, deformable_class_dicosm_axial, validate

logger = logging.getLogger(__name__)


class ToroidClass(str, Enum):
    ONE = "1"
    THREE = "3"
    FOUR = "4"
    SIX_A = "6A"
    SIX_B = "6B"
    SIX_C = "6C"
    EIGHT = "8"
    TWELVE_A = "12A"
    TWELVE_B = "12B"


@dataclass(frozen=True)
class CoverLattice:
    t1: tuple[int, int, int]
    t2: tuple[int, int, int]
    t3: tuple[int, int, int]
    index: int
    hermite_form: tuple[tuple[int, int, int], ...]

    @property
    def basis(self) -> tuple[tuple[int, int, int], ...]:
        return (self.t1, self.t2, self.t3)

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence[int]]) -> CoverLattice:
        t1, t2, t3 = (tuple(row) for row in basis)
        hnf = hermite_normal_form(basis)
        return cls(t1, t2, t3, lattice_index(hnf), hnf)


def cover_lattice(params: TwistoidParams) -> CoverLattice:
    lattice = translation_lattice(build_group(validate(params)))
    t1, t2, t3 = lattice.basis
    logger.debug(f"cover of {params}: index {lattice.index}")
    return CoverLattice(t1, t2, t3, lattice.index, lattice.hermite_form)


def cover_flag_count(lat: CoverLattice) -> int:
    return 48 * lat.index


def lattice_stabilizer(lat: CoverLattice) -> tuple[SignedPerm, ...]:
    """Point-group elements mapping the cover lattice onto itself"""
    return tuple(
        m for m in ALL_SIGNED_PERMS
        if all(lattice_contains(lat.hermite_form, tuple(m.apply(Vec3(*row)))) for row in lat.hermite_form)
    )


def _is_mirror(m: SignedPerm) -> bool:
    return m.determinant == -1 and m.order == 2 and sum(m.matrix()[i][i] for i in range(3)) == 1


def _mirror_normal_is_diagonal(m: SignedPerm) -> bool:
    # a mirror fixing one coordinate axis has a normal with two non-zero coordinates
    return any(m.perm[i] != i for i in range(3))


def cover_orbit_count(params: TwistoidParams) -> int:
    return 48 // len(lattice_stabilizer(cover_lattice(params)))


def toroid_class(lat: CoverLattice) -> ToroidClass:
    """Symmetry type of the 3-torus tessellation with translation lattice ``lat``"""
    stabilizer = lattice_stabilizer(lat)
    orbits = 48 // len(stabilizer)
    mirrors = [m for m in stabilizer if _is_mirror(m)]
    diagonal_mirror = any(_mirror_normal_is_diagonal(m) for m in mirrors)
    if orbits in (1, 3, 4, 8):
        return ToroidClass(str(orbits))
    if orbits == 6:
        if any(m.determinant == 1 and m.order == 4 for m in stabilizer):
            return ToroidClass.SIX_C
        return ToroidClass.SIX_B if diagonal_mirror else ToroidClass.SIX_A
    if orbits == 12:
        return ToroidClass.TWELVE_B if diagonal_mirror else ToroidClass.TWELVE_A
    raise InternalInconsistency(f"lattice {lat.basis} has {orbits} flag-orbits")


def cover_class(params: TwistoidParams) -> ToroidClass:
    """Symmetry type of the minimal toroidal cover"""
    return toroid_class(cover_lattice(params))


_COLUMN_CLASS = {
    DeformableClass.TWO: ToroidClass.SIX_C,
    DeformableClass.TWO_02: ToroidClass.SIX_A,
    DeformableClass.TWO_1: ToroidClass.SIX_B,
    DeformableClass.FOUR: ToroidClass.TWELVE_A,
}


def stated_cover_classes(params: TwistoidParams) -> frozenset[ToroidClass]:
    """
    Cover classes the closed-form rules allow for ``params``.

    The rules read the class from the family alone: the deformable column for
    the axial dicosm, the chi predicate for the diagonal dicosm, and the
    vanishing of ab(a-b) or PQ(P-Q) otherwise. The lattice class returned by
    cover_class can be more symmetric: the axial translation may match a
    horizontal period, and a lattice symmetry need not preserve the axes of an
    edge-centred axial dicosm.
    """
    p = validate(params)
    if isinstance(p, DicosmAxialParams):
        column = deformable_class_dicosm_axial(p)
        if column is not DeformableClass.ONE:
            return frozenset({_COLUMN_CLASS[column]})
        h = p.P2 - p.P1
        cubic = (p.P3 - p.P1) % h == 0 and h == p.Q3 == 2 * p.C
        return frozenset({ToroidClass.ONE if cubic else ToroidClass.THREE})
    if isinstance(p, DicosmDiagonalParams):
        h = p.P2 - p.P1
        s = (p.P3 - p.P1) % h
        if s == 0:
            return frozenset({ToroidClass.THREE, ToroidClass.SIX_B})
        return frozenset({ToroidClass.SIX_B if 2 * s == h else ToroidClass.TWELVE_B})
    if isinstance(p, TricosmParams):
        return frozenset({ToroidClass.FOUR if p.a * p.b * (p.a - p.b) == 0 else ToroidClass.EIGHT})
    if isinstance(p, TetracosmParams):
        return frozenset({ToroidClass.THREE if p.P * p.Q * (p.P - p.Q) == 0 else ToroidClass.SIX_C})
    raise InternalInconsistency(f"no cover rule for {p}")

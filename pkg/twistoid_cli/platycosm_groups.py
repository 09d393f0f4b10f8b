"""
Construction of the twistoid groups and exact group-theoretic queries.

A group is stored by its generators; everything else (translation lattice,
membership, normalization) is derived from them. Each group G is the union
of the cosets L * sigma^k, k = 0..m-1, of its translation lattice L, where
sigma is the first generator.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .config import WORD_LENGTH_BOUND
from .exact_geometry import (
    HALF_TURN_Z,
    IDENTITY,
    QUARTER_TURN_Z,
    THREE_FOLD,
    THREE_FOLD_INVERSE,
    InternalInconsistency,
    Isometry,
    SignedPerm,
    Vec3,
    axis_direction,
    compose,
    conjugate,
    inverse,
    power,
)
from .lattice import (
    coset_representatives,
    hermite_normal_form,
    lattice_contains,
    lattice_index,
    rational_gcd,
    reduce_vector,
)
from .params import (
    DicosmAxialParams,
    DicosmDiagonalParams,
    HexacosmParams,
    ManifoldKind,
    TetracosmParams,
    TricosmParams,
    TwistoidParams,
)

logger = logging.getLogger(__name__)

HEXACOSM_MESSAGE = (
    "the cubic tessellation admits no 6-fold twists: "
    "every twist preserving it has rotation order 2, 3 or 4; "
    "no 6-fold twist type exists in Table 1"
)


class HexacosmImpossible(Exception):
    """Raised for any request of a twistoid on the hexacosm"""


class NonIntegralGenerator(Exception):
    """Raised when a generator would not preserve the tessellation"""


# (x, y, z) -> (-y, -x, -z): half-turn about the e1-e2 direction
HALF_TURN_DIAGONAL = SignedPerm((1, 0, 2), (-1, -1, -1))

# in-plane basis vectors of the plane x + y + z = 0 used by the tricosm
TRICOSM_V1 = Vec3(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
TRICOSM_V2 = Vec3(Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3))
TRICOSM_OFFSET_AXIS = Vec3(Fraction(1, 3), Fraction(-1, 3), 0)


@dataclass(frozen=True)
class GroupSpec:
    kind: ManifoldKind
    generators: tuple[Isometry, ...]
    rotation_order: int
    params: Optional[TwistoidParams] = None

    @property
    def base_twist(self) -> Isometry:
        return self.generators[0]

    @property
    def rotation(self) -> SignedPerm:
        return self.base_twist.linear


@dataclass(frozen=True)
class TranslationLattice:
    basis: tuple[tuple[int, int, int], ...]
    hermite_form: tuple[tuple[int, int, int], ...]
    index: int

    def contains(self, v) -> bool:
        return lattice_contains(self.hermite_form, tuple(v))

    def reduce(self, v) -> tuple:
        return reduce_vector(self.hermite_form, tuple(v))

    def coset_representatives(self):
        return coset_representatives(self.hermite_form)


@dataclass(frozen=True)
class CanonicalElement:
    power: int
    coset_vector: Vec3


def _twist(linear: SignedPerm, axis_point: Vec3, axial: Vec3) -> Isometry:
    return Isometry(linear, axis_point - linear.apply(axis_point) + axial)


def _checked(generators: list[Isometry]) -> tuple[Isometry, ...]:
    for g in generators:
        if not g.translation.is_integral():
            raise NonIntegralGenerator(f"generator {g} does not preserve the cubic tessellation")
    return tuple(generators)


def _dicosm_axial_generators(p: DicosmAxialParams) -> list[Isometry]:
    return [
        Isometry(HALF_TURN_Z, Vec3(p.P1, 0, p.C)),
        Isometry(HALF_TURN_Z, Vec3(p.P2, 0, p.C)),
        Isometry(HALF_TURN_Z, Vec3(p.P3, p.Q3, p.C)),
    ]


def _dicosm_diagonal_generators(p: DicosmDiagonalParams) -> list[Isometry]:
    half = Fraction(1, 2)

    def twist(P: int, Q: int) -> Isometry:
        return Isometry(HALF_TURN_DIAGONAL, Vec3((P + p.N) * half, (P - p.N) * half, Q))

    return [twist(p.P1, 0), twist(p.P2, 0), twist(p.P3, p.Q3)]


def tricosm_axis(M: int) -> Vec3:
    """Point on the standard 3-fold axis: the origin when 3 | M, otherwise a Petrie axis"""
    return Vec3.zero() if M % 3 == 0 else TRICOSM_OFFSET_AXIS


def integral_rotation_senses(M: int) -> list[SignedPerm]:
    """3-fold rotations whose twist along the standard axis with axial part M/3 (1,1,1) is integral"""
    axis = tricosm_axis(M)
    axial = Vec3(Fraction(M, 3), Fraction(M, 3), Fraction(M, 3))
    return [
        r for r in (THREE_FOLD, THREE_FOLD_INVERSE)
        if _twist(r, axis, axial).translation.is_integral()
    ]


def _tricosm_rotation(p: TricosmParams, axis: Vec3) -> SignedPerm:
    integral = integral_rotation_senses(p.M)
    if not integral:
        raise NonIntegralGenerator(f"no rotation sense about {axis} preserves the tessellation")
    expected = 2 if p.M % 3 == 0 else 1
    if len(integral) != expected:
        raise InternalInconsistency(f"{len(integral)} integral rotation senses for M={p.M}")
    return integral[0]


def _tricosm_generators(p: TricosmParams) -> list[Isometry]:
    axis = tricosm_axis(p.M)
    rotation = _tricosm_rotation(p, axis)
    axial = Vec3(Fraction(p.M, 3), Fraction(p.M, 3), Fraction(p.M, 3))
    sigma1 = _twist(rotation, axis, axial)
    sigma2 = _twist(rotation, axis + TRICOSM_V1 * p.a + TRICOSM_V2 * p.b, axial)
    # sigma3 is chosen so that sigma3^2 = sigma1 * sigma2
    u = sigma2.translation - sigma1.translation
    sigma3 = Isometry(rotation, sigma1.translation - rotation.power(2).apply(u))
    return [sigma1, sigma2, sigma3]


def _tetracosm_generators(p: TetracosmParams) -> list[Isometry]:
    return [
        Isometry(QUARTER_TURN_Z, Vec3(0, 0, p.C)),
        Isometry(HALF_TURN_Z, Vec3(p.P, p.Q, 2 * p.C)),
    ]


ROTATION_ORDER = {
    ManifoldKind.DICOSM_AXIAL: 2,
    ManifoldKind.DICOSM_DIAGONAL: 2,
    ManifoldKind.TRICOSM: 3,
    ManifoldKind.TETRACOSM: 4,
}


def build_group(params: TwistoidParams) -> GroupSpec:
    """Generators of the twistoid group described by validated parameters"""
    if isinstance(params, HexacosmParams):
        raise HexacosmImpossible(HEXACOSM_MESSAGE)
    if isinstance(params, DicosmAxialParams):
        generators = _dicosm_axial_generators(params)
    elif isinstance(params, DicosmDiagonalParams):
        generators = _dicosm_diagonal_generators(params)
    elif isinstance(params, TricosmParams):
        generators = _tricosm_generators(params)
    elif isinstance(params, TetracosmParams):
        generators = _tetracosm_generators(params)
    else:
        raise TypeError(f"unknown parameter record {params!r}")
    group = GroupSpec(params.kind, _checked(generators), ROTATION_ORDER[params.kind], params)
    logger.debug(f"built {params.kind.value} group for {params}")
    return group


def closed_form_basis(params: TwistoidParams) -> tuple[tuple[int, int, int], ...]:
    """Lattice basis (t1, t2, t3) written directly in terms of the parameters"""
    if isinstance(params, DicosmAxialParams):
        return (
            (0, 0, 2 * params.C),
            (params.P2 - params.P1, 0, 0),
            (params.P3 - params.P1, params.Q3, 0),
        )
    if isinstance(params, DicosmDiagonalParams):
        h = (params.P2 - params.P1) // 2
        s = (params.P3 - params.P1) // 2
        return ((params.N, -params.N, 0), (h, h, 0), (s, s, params.Q3))
    if isinstance(params, TricosmParams):
        a, b, m = params.a, params.b, params.M
        return ((m, m, m), (a, b, -a - b), (-b, a + b, -a))
    if isinstance(params, TetracosmParams):
        return ((0, 0, 4 * params.C), (params.P, params.Q, 0), (params.Q, -params.P, 0))
    raise TypeError(f"no lattice basis for {params!r}")


def rotation_exponent(group: GroupSpec, linear: SignedPerm) -> Optional[int]:
    current = IDENTITY
    for k in range(group.rotation_order):
        if current == linear:
            return k
        current = current @ group.rotation
    return None


def lattice_generators(group: GroupSpec) -> list[tuple[int, int, int]]:
    """Translations generating L: sigma^m and the rotation images of g * sigma^-k"""
    m = group.rotation_order
    sigma = group.base_twist
    vectors = [power(sigma, m).translation]
    for g in group.generators[1:]:
        k = rotation_exponent(group, g.linear)
        if k is None:
            raise InternalInconsistency(f"generator {g} has a rotation outside <{group.rotation}>")
        v = compose(g, power(sigma, -k)).translation
        vectors.extend(group.rotation.power(j).apply(v) for j in range(m))
    return [v.as_integers() for v in vectors]


@lru_cache(maxsize=512)
def translation_lattice(group: GroupSpec) -> TranslationLattice:
    vectors = lattice_generators(group)
    hnf = hermite_normal_form(vectors)
    if group.params is not None:
        basis = closed_form_basis(group.params)
        if hermite_normal_form(basis) != hnf:
            raise InternalInconsistency(f"closed-form lattice of {group.params} differs from the derived one")
    else:
        basis = _independent_rows(vectors)
    return TranslationLattice(basis, hnf, lattice_index(hnf))


def _independent_rows(vectors: list[tuple[int, int, int]]) -> tuple[tuple[int, int, int], ...]:
    chosen: list[tuple[int, int, int]] = []
    for v in vectors:
        if _rank(chosen + [v]) == len(chosen) + 1:
            chosen.append(v)
        if len(chosen) == 3:
            break
    return tuple(chosen)


def _rank(rows: list[tuple[int, int, int]]) -> int:
    work = [list(map(Fraction, r)) for r in rows]
    rank = 0
    for col in range(3):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col] / work[rank][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def canonical_element(group: GroupSpec, x: Isometry) -> Optional[CanonicalElement]:
    """Write x as tau_v * sigma^k; None when the linear part is not a power of the rotation"""
    k = rotation_exponent(group, x.linear)
    if k is None:
        return None
    residue = compose(x, power(group.base_twist, -k)).translation
    reduced = translation_lattice(group).reduce(residue)
    return CanonicalElement(k, Vec3(*reduced))


def contains(group: GroupSpec, x: Isometry) -> bool:
    element = canonical_element(group, x)
    return element is not None and element.coset_vector.is_zero()


def normalizes(group: GroupSpec, x: Isometry) -> bool:
    """True iff x G x^-1 = G"""
    x_inv = inverse(x)
    return all(
        contains(group, conjugate(x, g)) and contains(group, conjugate(x_inv, g))
        for g in group.generators
    )


def same_group(first: GroupSpec, second: GroupSpec) -> bool:
    return all(contains(first, g) for g in second.generators) and all(
        contains(second, g) for g in first.generators
    )


def conjugate_group(group: GroupSpec, x: Isometry) -> GroupSpec:
    """The group x G x^-1, generator by generator"""
    generators = tuple(conjugate(x, g) for g in group.generators)
    return GroupSpec(group.kind, _checked(list(generators)), group.rotation_order)


def _has_fixed_point(g: Isometry) -> bool:
    # a non-translation fixes a point iff it has finite order
    n = g.linear.order
    return n > 1 and power(g, n).is_identity()


def is_fixed_point_free_witness(group: GroupSpec, word_length_bound: int = WORD_LENGTH_BOUND) -> bool:
    """
    Exact check that no non-identity element of G has a fixed point.

    Every element is tau_v * sigma^k; it has a fixed point iff its projection
    onto the rotation axis vanishes, i.e. iff the axial part of sigma^k lies in
    the axial projection of L. A bounded search over generator words
    double-checks the coset argument.
    """
    try:
        lattice = translation_lattice(group)
    except (ValueError, InternalInconsistency) as e:
        logger.debug(f"no full-rank translation lattice: {e}")
        return False

    if group.rotation_order > 1:
        d = axis_direction(group.rotation)
        dd = d.dot(d)
        lattice_axial = rational_gcd([Vec3(*row).dot(d) / dd for row in lattice.hermite_form])
        for k in range(1, group.rotation_order):
            axial = power(group.base_twist, k).translation.dot(d) / dd
            if lattice_axial == 0:
                if axial == 0:
                    return False
            elif (axial / lattice_axial).denominator == 1:
                return False

    letters = list(group.generators) + [inverse(g) for g in group.generators]
    seen = {Isometry.identity()}
    frontier = deque([(Isometry.identity(), 0)])
    while frontier:
        word, length = frontier.popleft()
        if length == word_length_bound:
            continue
        for letter in letters:
            nxt = compose(word, letter)
            if nxt in seen:
                continue
            seen.add(nxt)
            if _has_fixed_point(nxt):
                logger.debug(f"element {nxt} has a fixed point")
                return False
            frontier.append((nxt, length + 1))
    return True


DUAL_SHIFT = Vec3(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


def dual_group(group: GroupSpec) -> GroupSpec:
    """Conjugate by the translation moving vertices to cube centres"""
    return conjugate_group(group, Isometry.translation_by(DUAL_SHIFT))

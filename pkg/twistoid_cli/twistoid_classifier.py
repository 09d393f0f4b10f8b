"""
Closed-form classification of cubic twistoids.

Parameters are validated and normalized, then sorted into families by exact
integer predicates; flag counts, flag-orbit counts and the order of the
component of identity follow from the family. Parameters can also be read
back from a group, which gives canonical forms and the dual twistoid.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional

from .exact_geometry import QUARTER_TURN_Z, InternalInconsistency, analyze_twist
from .lattice import hermite_normal_form, lattice_contains, lattice_index
from .params import (
    DicosmAxialParams,
    DicosmDiagonalParams,
    HexacosmParams,
    ManifoldKind,
    TetracosmParams,
    TricosmParams,
    TwistoidParams,
)
from .platycosm_groups import (
    HEXACOSM_MESSAGE,
    GroupSpec,
    HexacosmImpossible,
    build_group,
    dual_group,
    translation_lattice,
)

logger = logging.getLogger(__name__)


class InvalidParameters(Exception):
    """Raised when parameters violate the constraints of their family"""


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameters(message)


_PLANE_SYMMETRIES = tuple((swap, sx, sy) for swap in (False, True) for sx in (1, -1) for sy in (1, -1))


def _plane_image(v: tuple[int, int], g: tuple[bool, int, int]) -> tuple[int, int]:
    swap, sx, sy = g
    x, y = (v[1], v[0]) if swap else v
    return (sx * x, sy * y)


def _y_first_form(u: tuple[int, int], w: tuple[int, int]) -> tuple[int, int, int]:
    """(q, s, h) with <u, w> = <(s, q), (h, 0)> and 0 <= s < h"""
    (q, s), (_, h) = hermite_normal_form([(u[1], u[0]), (w[1], w[0])])
    return q, s, h


def _key(params) -> tuple:
    return (params.P2, params.Q3, params.P3)


def _canonical_dicosm_axial(
    C: int, axis: tuple[int, int], u: tuple[int, int], w: tuple[int, int]
) -> DicosmAxialParams:
    """
    Least parameters of the axial dicosm whose axes, in doubled units, are
    axis + <u, w>, up to the symmetries of the tessellation and duality.

    sigma1 sits on a vertex axis when one exists. An axis through cube
    centres becomes a vertex axis of the dual, so it counts as one too. Only
    otherwise does sigma1 sit on an edge-midpoint axis (p1 = 1/2). The plane
    symmetries then pick the least (p2, q3, p3).
    """
    classes = {
        ((axis[0] + i * u[0] + j * w[0]) % 2, (axis[1] + i * u[1] + j * w[1]) % 2)
        for i in (0, 1)
        for j in (0, 1)
    }
    P1 = 0 if classes & {(0, 0), (1, 1)} else 1
    best = None
    for g in _PLANE_SYMMETRIES:
        # sigma1 must land on an axis through the midpoint of an e1 edge
        if P1 == 1 and ((0, 1) if g[0] else (1, 0)) not in classes:
            continue
        q, s, h = _y_first_form(_plane_image(u, g), _plane_image(w, g))
        candidate = DicosmAxialParams(C, P1, P1 + h, (P1 + s) % h, q)
        if best is None or _key(candidate) < _key(best):
            best = candidate
    if best is None:
        raise InternalInconsistency(f"no standard placement of the axes {axis} + <{u}, {w}>")
    return best


def _validate_dicosm_axial(p: DicosmAxialParams) -> DicosmAxialParams:
    _require(p.C >= 1, "c must be a positive integer")
    _require(p.P1 in (0, 1), "p1 must be 0 or 1/2")
    _require(p.P2 > p.P1, "p2 must exceed p1")
    _require(p.Q3 >= 1, "q3 must be positive")
    if p.P1 == 1:
        _require(p.P2 % 2 == 1, "p1 = 1/2 requires p2 - p1 to be an integer")
        if p.Q3 % 2 == 0:
            _require(p.P3 % 2 == 1, "p1 = 1/2 and integral q3 require p3 - p1 to be an integer")
    return _canonical_dicosm_axial(p.C, (p.P1, 0), (p.P2 - p.P1, 0), (p.P3 - p.P1, p.Q3))


def _validate_dicosm_diagonal(p: DicosmDiagonalParams) -> DicosmDiagonalParams:
    _require(p.N >= 1, "sqrt2 * c must be a positive integer")
    _require(p.P1 in (0, 1), "p1 must be 0 or 1/4")
    _require(p.N % 2 == p.P1, "p1 = 0 exactly when sqrt2 * c is even")
    _require(p.P2 > p.P1, "p2 must exceed p1")
    _require(p.P2 % 2 == p.P1 and p.P3 % 2 == p.P1, "p2 - p1 and p3 - p1 must lie in Z/2")
    _require(p.Q3 >= 1, "q3 must be positive")
    h = p.P2 - p.P1
    # reflecting p about sigma1's axis sends p3 - p1 to p1 - p3
    return replace(p, P3=min(p.P3 % h, (2 * p.P1 - p.P3) % h))


def _validate_tricosm(p: TricosmParams) -> TricosmParams:
    _require(p.M >= 1, "sqrt3 * c must be a positive integer")
    _require(p.a >= 0 and p.b >= 0, "a and b must be non-negative")
    _require((p.a, p.b) != (0, 0), "a and b must not both vanish")
    # the swap x <-> y fixes e1+e2+e3 and exchanges the offsets (a, b) and (b, a)
    return replace(p, a=max(p.a, p.b), b=min(p.a, p.b))


def _validate_tetracosm(p: TetracosmParams) -> TetracosmParams:
    _require(p.C >= 1, "c must be a positive integer")
    _require((p.P, p.Q) != (0, 0), "(p, q) must not be (0, 0)")
    P, Q = abs(p.P), abs(p.Q)
    return replace(p, P=max(P, Q), Q=min(P, Q))


def validate(params: TwistoidParams) -> TwistoidParams:
    """Check the constraints of the family and return the normalized parameters"""
    if isinstance(params, HexacosmParams):
        raise HexacosmImpossible(HEXACOSM_MESSAGE)
    if isinstance(params, DicosmAxialParams):
        return _validate_dicosm_axial(params)
    if isinstance(params, DicosmDiagonalParams):
        return _validate_dicosm_diagonal(params)
    if isinstance(params, TricosmParams):
        return _validate_tricosm(params)
    if isinstance(params, TetracosmParams):
        return _validate_tetracosm(params)
    raise InvalidParameters(f"unknown parameter record {params!r}")


def flag_count(params: TwistoidParams) -> int:
    p = validate(params)
    if isinstance(p, DicosmAxialParams):
        return 48 * p.C * p.Q3 * (p.P2 - p.P1)
    if isinstance(p, DicosmDiagonalParams):
        return 24 * p.N * p.Q3 * (p.P2 - p.P1)
    if isinstance(p, TricosmParams):
        return 48 * p.M * (p.a * p.a + p.a * p.b + p.b * p.b)
    return 48 * p.C * (p.P * p.P + p.Q * p.Q)


# ---------------------------------------------------------------------------
# Symmetry predicates
# ---------------------------------------------------------------------------

ALPHA, BETA, ALPHABETA = "alpha", "beta", "alphabeta"
GAMMA1, GAMMA2, ETA, CHI, ZETA = "gamma1", "gamma2", "eta", "chi", "zeta"


class DeformableClass(str, Enum):
    ONE = "1"
    TWO = "2"
    TWO_02 = "2_02"
    TWO_1 = "2_1"
    FOUR = "4"

    @property
    def order(self) -> int:
        return {"1": 4, "2": 2, "2_02": 2, "2_1": 2, "4": 1}[self.value]


def rigid_part_dicosm_axial(params: DicosmAxialParams) -> frozenset[str]:
    """Translation classes alpha, beta, alphabeta normalizing the group"""
    p = validate(params)
    h_even = (p.P2 - p.P1) % 2 == 0
    q_even = p.Q3 % 2 == 0
    rigid = set()
    if h_even:
        rigid.add(ALPHA)
    if q_even and (p.P3 - p.P1) % 2 == 0:
        rigid.add(BETA)
    if q_even and (p.P3 - p.P2) % 2 == 0:
        rigid.add(ALPHABETA)
    return frozenset(rigid)


def _integral(x: Fraction) -> bool:
    return x.denominator == 1


def dicosm_axial_deformable_flags(params: DicosmAxialParams) -> dict[str, bool]:
    """
    gamma1: half-turn about e1 through sigma1's axis.
    gamma2: half-turn about e1+e2. eta: 4-fold twist about sigma1's axis.

    In doubled units the horizontal lattice is <(h, 0), (s, Q3)>. The half-turn
    gamma1 keeps it iff 2s = 0 mod h; gamma2 and eta need it mapped onto itself
    by a diagonal reflection or a quarter-turn, and for p1 = 1/2 the image of
    the edge-type axis set must again contain an edge-type axis.
    """
    p = validate(params)
    h, s, q = p.P2 - p.P1, p.P3 - p.P1, p.Q3
    gamma1 = (2 * s) % h == 0
    square = _integral(Fraction(s, q)) and _integral(Fraction(h, q))
    # an axis of the opposite parity class exists only if some lattice vector is odd in both coordinates
    axes_survive = p.P1 == 0 or any((i * h + j * s) % 2 == 1 and (j * q) % 2 == 1 for i in (0, 1) for j in (0, 1))
    gamma2 = square and _integral(Fraction(q * q - s * s, q * h)) and axes_survive
    eta = square and _integral(Fraction(q * q + s * s, q * h)) and axes_survive
    return {GAMMA1: gamma1, GAMMA2: gamma2, ETA: eta}


_DEFORMABLE_BY_FLAGS = {
    (True, True, True): DeformableClass.ONE,
    (False, False, True): DeformableClass.TWO,
    (True, False, False): DeformableClass.TWO_02,
    (False, True, False): DeformableClass.TWO_1,
    (False, False, False): DeformableClass.FOUR,
}


def deformable_class_dicosm_axial(params: DicosmAxialParams) -> DeformableClass:
    flags = dicosm_axial_deformable_flags(params)
    key = (flags[GAMMA1], flags[GAMMA2], flags[ETA])
    if key not in _DEFORMABLE_BY_FLAGS:
        raise InternalInconsistency(f"deformable symmetries {flags} of {params} generate no subgroup of D4")
    return _DEFORMABLE_BY_FLAGS[key]


def symmetry_predicates(params: TwistoidParams) -> dict[str, bool]:
    """Closed-form truth of each named outer symmetry"""
    p = validate(params)
    if isinstance(p, DicosmAxialParams):
        rigid = rigid_part_dicosm_axial(p)
        return {ALPHA: ALPHA in rigid, BETA: BETA in rigid, ALPHABETA: ALPHABETA in rigid,
                **dicosm_axial_deformable_flags(p)}
    if isinstance(p, DicosmDiagonalParams):
        chi = (2 * (p.P3 - p.P1)) % (p.P2 - p.P1) == 0
        return {ALPHA: True, BETA: p.Q3 % 2 == 0, CHI: chi}
    if isinstance(p, TricosmParams):
        return {CHI: p.a == p.b, ZETA: p.a * p.b == 0}
    return {ALPHA: (p.P - p.Q) % 2 == 0, CHI: p.P * p.Q * (p.P - p.Q) == 0}


# ---------------------------------------------------------------------------
# Families and reports
# ---------------------------------------------------------------------------

RIGID_ROWS: tuple[tuple[frozenset[str], str], ...] = (
    (frozenset(), "<rho'>"),
    (frozenset({ALPHA}), "<rho' alpha'>"),
    (frozenset({BETA}), "<rho' beta'>"),
    (frozenset({ALPHABETA}), "<rho' alpha'beta'>"),
    (frozenset({ALPHA, BETA, ALPHABETA}), "<rho' alpha' beta'>"),
)
ROW_LABELS = dict(RIGID_ROWS)
DEFORMABLE_COLUMNS = tuple(DeformableClass)


@dataclass(frozen=True)
class SymmetryProfile:
    rigid_part: frozenset[str]
    deformable_class: Optional[DeformableClass]
    predicates: tuple[tuple[str, bool], ...]

    def holds(self, name: str) -> bool:
        return dict(self.predicates).get(name, False)

    @property
    def deformable_label(self) -> str:
        if self.deformable_class is not None:
            return self.deformable_class.value
        held = [name for name, value in self.predicates if value and name in (CHI, ZETA)]
        return "+".join(held) if held else "-"


@dataclass(frozen=True)
class ClassificationReport:
    kind: ManifoldKind
    params: TwistoidParams
    family_id: str
    profile: SymmetryProfile
    flag_count: int
    cube_count: Fraction
    flag_orbit_count: int
    identity_component_order: int

    def invariants(self) -> tuple:
        """Fields that do not depend on how the twistoid is placed in the tessellation"""
        deformable = self.profile.deformable_class
        shape = deformable.value if deformable is not None else self.family_id
        return (
            self.kind,
            self.flag_count,
            self.flag_orbit_count,
            self.identity_component_order,
            shape,
            len(self.profile.rigid_part),
        )


def _exact_quotient(numerator: int, denominator: int, what: str) -> int:
    if numerator % denominator:
        raise InternalInconsistency(f"{what}: {numerator}/{denominator} is not an integer")
    return numerator // denominator


_RIGID_FACTOR = {0: 1, 1: 2, 3: 4}


def _family_label(predicates: dict[str, bool], names: tuple[str, ...]) -> str:
    held = [name for name in names if predicates[name]]
    return "+".join(held) if held else "none"


def classify(params: TwistoidParams) -> ClassificationReport:
    p = validate(params)
    predicates = symmetry_predicates(p)
    flags = flag_count(p)
    deformable = None

    if isinstance(p, DicosmAxialParams):
        rigid = rigid_part_dicosm_axial(p)
        if len(rigid) not in _RIGID_FACTOR:
            raise InternalInconsistency(f"rigid part {sorted(rigid)} of {p} is not a group")
        deformable = deformable_class_dicosm_axial(p)
        r = _RIGID_FACTOR[len(rigid)]
        orbits = _exact_quotient(12 * p.Q3 * (p.P2 - p.P1), r * deformable.order, f"orbits of {p}")
        family = f"{ROW_LABELS[rigid]}|{deformable.value}"
        identity_order = 2 * p.C
    elif isinstance(p, DicosmDiagonalParams):
        rigid = frozenset({ALPHA, BETA, ALPHABETA}) if predicates[BETA] else frozenset({ALPHA})
        factor = {(True, True): 1, (False, True): 2, (True, False): 2, (False, False): 4}[
            (predicates[BETA], predicates[CHI])
        ]
        orbits = _exact_quotient(3 * p.Q3 * (p.P2 - p.P1) * factor, 2, f"orbits of {p}")
        family = _family_label(predicates, (BETA, CHI))
        identity_order = p.N
    elif isinstance(p, TricosmParams):
        rigid = frozenset({ALPHA})
        norm = p.a * p.a + p.a * p.b + p.b * p.b
        orbits = (8 if predicates[CHI] or predicates[ZETA] else 16) * norm
        family = _family_label(predicates, (CHI, ZETA))
        identity_order = p.M
    else:
        rigid = frozenset({ALPHA}) if predicates[ALPHA] else frozenset()
        base = p.P * p.P + p.Q * p.Q
        factor = {(True, True): 3, (True, False): 6, (False, True): 6, (False, False): 12}[
            (predicates[ALPHA], predicates[CHI])
        ]
        orbits = factor * base
        family = _family_label(predicates, (ALPHA, CHI))
        identity_order = 4 * p.C

    if flags % orbits:
        raise InternalInconsistency(f"{orbits} flag-orbits do not divide {flags} flags for {p}")
    profile = SymmetryProfile(rigid, deformable, tuple(sorted(predicates.items())))
    report = ClassificationReport(
        kind=p.kind,
        params=p,
        family_id=family,
        profile=profile,
        flag_count=flags,
        cube_count=Fraction(flags, 48),
        flag_orbit_count=orbits,
        identity_component_order=identity_order,
    )
    logger.debug(f"classified {p} as {family} with {orbits} flag-orbits")
    return report


_TABLE2 = (
    ((5, 0, 5), (5, 2, 1), (5, 0, 3), (3, 2, 1), (21, 4, 1)),
    ((6, 3, 3), (26, 5, 1), (10, 5, 2), (8, 3, 1), (20, 2, 1)),
    (None, None, (3, 0, 4), None, (11, 2, 4)),
    (None, None, None, None, (5, 1, 2)),
    ((4, 0, 4), (10, 4, 2), (12, 6, 2), (6, 4, 2), (40, 4, 2)),
)


def table2_grid() -> list[tuple[str, list[Optional[DicosmAxialParams]]]]:
    """Rows of rigid subgroups with one witness (or None) per deformable class"""
    grid = []
    for (_, label), cells in zip(RIGID_ROWS, _TABLE2):
        grid.append(
            (label, [None if cell is None else DicosmAxialParams(1, 0, *cell) for cell in cells])
        )
    return grid


def table2_witnesses() -> list[tuple[DicosmAxialParams, str, DeformableClass]]:
    witnesses = []
    for label, cells in table2_grid():
        for column, params in zip(DEFORMABLE_COLUMNS, cells):
            if params is not None:
                witnesses.append((params, label, column))
    return witnesses


# ---------------------------------------------------------------------------
# Reading parameters back from groups
# ---------------------------------------------------------------------------

def _horizontal_basis(group: GroupSpec) -> list[tuple[int, int]]:
    """Basis (x, y) of the translations of the group perpendicular to e3"""
    hnf = hermite_normal_form([(v[2], v[1], v[0]) for v in translation_lattice(group).hermite_form])
    return [(row[2], row[1]) for row in hnf[1:]]


def _dicosm_axial_from_group(group: GroupSpec) -> Optional[DicosmAxialParams]:
    x, y, z = group.base_twist.translation.as_integers()
    u, w = _horizontal_basis(group)
    return _canonical_dicosm_axial(abs(z), (x, y), u, w)


def _dicosm_diagonal_from_group(group: GroupSpec) -> Optional[DicosmDiagonalParams]:
    x, y, z = group.base_twist.translation.as_integers()
    # axis (p, p, q) is recorded as (4p, 2q); lattice vectors shift axes by (v_x + v_y, v_z)
    axis = (x + y, z)
    u, w = hermite_normal_form([(v[0] + v[1], v[2]) for v in translation_lattice(group).hermite_form])
    best = None
    for fp in (1, -1):
        for fq in (1, -1):
            a = (fp * axis[0], fq * axis[1])
            fu, fw = (fp * u[0], fq * u[1]), (fp * w[0], fq * w[1])
            if all((a[1] + i * fu[1] + j * fw[1]) % 2 for i in (0, 1) for j in (0, 1)):
                continue
            P1 = a[0] % 2
            q, s, h = _y_first_form(fu, fw)
            candidate = DicosmDiagonalParams(abs(x - y), P1, P1 + h, (P1 + s) % h, q)
            if best is None or _key(candidate) < _key(best):
                best = candidate
    return best


def _tricosm_from_group(group: GroupSpec) -> Optional[TricosmParams]:
    twist = analyze_twist(group.base_twist)
    M = 3 * twist.norm_class.coefficient
    if M.denominator != 1:
        return None
    # rows 2 and 3 of this form are the translations with zero coordinate sum
    hnf = hermite_normal_form(
        [(v[0] + v[1] + v[2], v[0], v[1]) for v in translation_lattice(group).hermite_form]
    )
    plane = hermite_normal_form([(row[1], row[2]) for row in hnf[1:]])
    norm = lattice_index(plane)
    bound = isqrt(norm)
    for a in range(bound + 1):
        for b in range(bound + 1):
            if a * a + a * b + b * b == norm and lattice_contains(plane, (a, b)) and lattice_contains(plane, (-b, a + b)):
                return validate(TricosmParams(int(M), a, b))
    return None


def _tetracosm_from_group(group: GroupSpec) -> Optional[TetracosmParams]:
    sigma = group.base_twist
    if sigma.linear not in (QUARTER_TURN_Z, QUARTER_TURN_Z.inverse()):
        return None
    x, y, z = sigma.translation.as_integers()
    u, w = _horizontal_basis(group)
    # a 4-fold axis through a vertex exists iff some x + y + (v_x + v_y) is even
    if all((x + y + i * (u[0] + u[1]) + j * (w[0] + w[1])) % 2 for i in (0, 1) for j in (0, 1)):
        return None
    plane = hermite_normal_form([u, w])
    norm = lattice_index(plane)
    for P in range(isqrt(norm) + 1):
        Q = isqrt(norm - P * P)
        if P * P + Q * Q == norm and lattice_contains(plane, (P, Q)) and lattice_contains(plane, (-Q, P)):
            return validate(TetracosmParams(abs(z), P, Q))
    return None


def params_from_group(group: GroupSpec) -> Optional[TwistoidParams]:
    """
    Parameters of a group in the family of ``group.kind``, or None when no
    symmetry of the tessellation moves its axes into standard position.

    Among equivalent placements the least parameters are chosen, so the
    result only depends on the conjugacy class of the group.
    """
    if group.kind is ManifoldKind.DICOSM_AXIAL:
        found = _dicosm_axial_from_group(group)
    elif group.kind is ManifoldKind.DICOSM_DIAGONAL:
        found = _dicosm_diagonal_from_group(group)
    elif group.kind is ManifoldKind.TRICOSM:
        found = _tricosm_from_group(group)
    elif group.kind is ManifoldKind.TETRACOSM:
        found = _tetracosm_from_group(group)
    else:
        raise HexacosmImpossible(HEXACOSM_MESSAGE)
    return None if found is None else validate(found)


def canonical_params(params: TwistoidParams) -> TwistoidParams:
    p = validate(params)
    found = params_from_group(build_group(p))
    if found is None:
        raise InternalInconsistency(f"cannot read parameters back from the group of {p}")
    return found


def dual_params(params: TwistoidParams) -> TwistoidParams:
    """
    Parameters of the dual twistoid, read back from the conjugate of its group
    by the translation (1/2, 1/2, 1/2).

    Normalized parameters are taken up to duality, so the result is the
    normalized form of ``params`` itself: applying it twice is the identity
    and the family never changes.
    """
    p = validate(params)
    found = params_from_group(dual_group(build_group(p)))
    if found is None:
        logger.debug(f"dual of {p} has no axis of the standard incidence; keeping canonical form")
        return canonical_params(p)
    if found != p:
        raise InternalInconsistency(f"dual of {p} reads back as {found}")
    return found


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridBounds:
    max_c: int = 1
    max_p2: int = 6
    max_q3: int = 4
    max_n: int = 2
    max_m: int = 3
    max_ab: int = 3
    max_pq: int = 4


def _raw_grid(kind: ManifoldKind, bounds: GridBounds) -> Iterator[TwistoidParams]:
    if kind is ManifoldKind.DICOSM_AXIAL:
        for C in range(1, bounds.max_c + 1):
            for P1 in (0, 1):
                for P2 in range(P1 + 1, bounds.max_p2 + 1):
                    for P3 in range(P2):
                        for Q3 in range(1, bounds.max_q3 + 1):
                            yield DicosmAxialParams(C, P1, P2, P3, Q3)
    elif kind is ManifoldKind.DICOSM_DIAGONAL:
        for N in range(1, bounds.max_n + 1):
            P1 = N % 2
            for P2 in range(P1 + 2, bounds.max_p2 + 1, 2):
                for P3 in range(P1, P2, 2):
                    for Q3 in range(1, bounds.max_q3 + 1):
                        yield DicosmDiagonalParams(N, P1, P2, P3, Q3)
    elif kind is ManifoldKind.TRICOSM:
        for M in range(1, bounds.max_m + 1):
            for a in range(bounds.max_ab + 1):
                for b in range(bounds.max_ab + 1):
                    yield TricosmParams(M, a, b)
    elif kind is ManifoldKind.TETRACOSM:
        for C in range(1, bounds.max_c + 1):
            for P in range(bounds.max_pq + 1):
                for Q in range(P + 1):
                    yield TetracosmParams(C, P, Q)
    else:
        raise HexacosmImpossible(HEXACOSM_MESSAGE)


def _within(params: TwistoidParams, bounds: GridBounds) -> bool:
    # swapping the axes of the axial dicosm can trade a shorter p2 for a longer q3
    return not isinstance(params, DicosmAxialParams) or params.Q3 <= bounds.max_q3


def enumerate_params(kind: ManifoldKind, bounds: GridBounds = GridBounds()) -> list[TwistoidParams]:
    """Every normalized parameter set within the bounds, in sorted encoding order"""
    found = set()
    for raw in _raw_grid(kind, bounds):
        try:
            params = validate(raw)
        except InvalidParameters:
            continue
        if _within(params, bounds):
            found.add(params)
    return sorted(found)


def _flag_bounded_grid(kind: ManifoldKind, budget: int) -> Iterator[TwistoidParams]:
    """Raw parameters whose flag count is at most 48 * budget"""
    if kind is ManifoldKind.DICOSM_AXIAL:
        # 48 C Q3 (P2 - P1) flags
        for C in range(1, budget + 1):
            for Q3 in range(1, budget // C + 1):
                for h in range(1, budget // (C * Q3) + 1):
                    for P1 in (0, 1):
                        for P3 in range(h):
                            yield DicosmAxialParams(C, P1, P1 + h, P3, Q3)
    elif kind is ManifoldKind.DICOSM_DIAGONAL:
        # 24 N Q3 (P2 - P1) flags with P2 - P1 even
        for N in range(1, budget + 1):
            P1 = N % 2
            for Q3 in range(1, budget // N + 1):
                for half in range(1, budget // (N * Q3) + 1):
                    for P3 in range(P1, 2 * half, 2):
                        yield DicosmDiagonalParams(N, P1, P1 + 2 * half, P3, Q3)
    elif kind is ManifoldKind.TRICOSM:
        for M in range(1, budget + 1):
            norm = budget // M
            for a in range(isqrt(norm) + 1):
                for b in range(a + 1):
                    if 0 < a * a + a * b + b * b <= norm:
                        yield TricosmParams(M, a, b)
    elif kind is ManifoldKind.TETRACOSM:
        for C in range(1, budget + 1):
            norm = budget // C
            for P in range(isqrt(norm) + 1):
                for Q in range(P + 1):
                    if 0 < P * P + Q * Q <= norm:
                        yield TetracosmParams(C, P, Q)
    else:
        raise HexacosmImpossible(HEXACOSM_MESSAGE)


def flag_bounded_params(kind: ManifoldKind, max_flags: int) -> list[TwistoidParams]:
    """Every normalized parameter set with at most ``max_flags`` flags, in sorted encoding order"""
    found = set()
    for raw in _flag_bounded_grid(kind, max_flags // 48):
        try:
            found.add(validate(raw))
        except InvalidParameters:
            continue
    logger.debug(f"{len(found)} {kind.value} parameter sets with at most {max_flags} flags")
    return sorted(found)


def realized_families(kind: ManifoldKind, bounds: GridBounds = GridBounds()) -> dict[str, TwistoidParams]:
    """First witness (in encoding order) of each family met in the grid"""
    families: dict[str, TwistoidParams] = {}
    for params in enumerate_params(kind, bounds):
        families.setdefault(classify(params).family_id, params)
    return families


@dataclass(frozen=True)
class FamilyEntry:
    kind: ManifoldKind
    family_id: str
    orbit_formula: str
    witness: TwistoidParams


def family_catalog() -> list[FamilyEntry]:
    """All non-empty families with their flag-orbit counts in geometric parameters"""
    entries = []
    for params, _, _ in table2_witnesses():
        report = classify(params)
        r = _RIGID_FACTOR[len(report.profile.rigid_part)]
        coefficient = 48 // (r * report.profile.deformable_class.order)
        entries.append(FamilyEntry(params.kind, report.family_id, f"{coefficient}q3(p2-p1)", params))
    diagonal = (
        (DicosmDiagonalParams(2, 0, 2, 0, 2), 12),
        (DicosmDiagonalParams(1, 1, 3, 1, 1), 24),
        (DicosmDiagonalParams(2, 0, 8, 2, 2), 24),
        (DicosmDiagonalParams(2, 0, 8, 2, 1), 48),
    )
    for params, coefficient in diagonal:
        entries.append(FamilyEntry(params.kind, classify(params).family_id, f"{coefficient}q3(p2-p1)", params))
    for params, coefficient in ((TricosmParams(1, 1, 1), 8), (TricosmParams(1, 1, 0), 8), (TricosmParams(1, 2, 1), 16)):
        entries.append(FamilyEntry(params.kind, classify(params).family_id, f"{coefficient}(a^2+b^2+ab)", params))
    tetracosm = (
        (TetracosmParams(1, 1, 1), 12),
        (TetracosmParams(1, 3, 1), 24),
        (TetracosmParams(1, 1, 0), 24),
        (TetracosmParams(1, 2, 1), 48),
    )
    for params, coefficient in tetracosm:
        entries.append(FamilyEntry(params.kind, classify(params).family_id, f"{coefficient}(p^2+q^2)", params))
    return entries

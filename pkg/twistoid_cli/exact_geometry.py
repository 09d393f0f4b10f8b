"""
Exact geometry of the cubic tessellation.

Isometries preserving the tessellation are pairs (signed permutation,
translation). Every coordinate is a ``fractions.Fraction``, so equality is
structural and no tolerance is ever needed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from math import gcd, lcm
from typing import Iterator, Union

logger = logging.getLogger(__name__)

Rational = Fraction
Number = Union[int, Fraction]


class NotATwist(Exception):
    """Raised when an isometry has no screw-motion decomposition"""


class Unclassifiable(Exception):
    """Raised when twist data matches none of the eleven twist classes"""


class NotThreeFold(Exception):
    """Raised when Petrie handedness is asked of a twist that is not 3-fold"""


class InternalInconsistency(Exception):
    """Raised when two independent computations of the same quantity disagree"""


def _rational(value: Number) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True, order=True)
class Vec3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _rational(self.x))
        object.__setattr__(self, "y", _rational(self.y))
        object.__setattr__(self, "z", _rational(self.z))

    @classmethod
    def zero(cls) -> "Vec3":
        return cls(0, 0, 0)

    @classmethod
    def of(cls, coords) -> "Vec3":
        x, y, z = coords
        return cls(x, y, z)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y
        yield self.z

    def __getitem__(self, i: int) -> Fraction:
        return (self.x, self.y, self.z)[i]

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, k: Number) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def __truediv__(self, k: Number) -> "Vec3":
        k = _rational(k)
        return Vec3(self.x / k, self.y / k, self.z / k)

    def dot(self, other: "Vec3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def is_zero(self) -> bool:
        return not (self.x or self.y or self.z)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self)

    def as_integers(self) -> tuple[int, int, int]:
        if not self.is_integral():
            raise ValueError(f"{self} is not an integer vector")
        return (int(self.x), int(self.y), int(self.z))

    def primitive(self) -> "Vec3":
        """Smallest integer vector with the same direction and sense"""
        if self.is_zero():
            raise ValueError("the zero vector has no direction")
        scale = lcm(*(c.denominator for c in self))
        ints = [int(c * scale) for c in self]
        g = gcd(*ints)
        return Vec3(*(c // g for c in ints))

    def __str__(self) -> str:
        return f"({self.x}, {self.y}, {self.z})"


def _permutation_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True, order=True)
class SignedPerm:
    """
    A signed permutation matrix M acting by (Mx)_i = signs[i] * x[perm[i]].

    Row i of the matrix has its single non-zero entry signs[i] in column perm[i].
    """

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2] or any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"not a signed permutation: perm={self.perm} signs={self.signs}")

    @classmethod
    def identity(cls) -> "SignedPerm":
        return cls((0, 1, 2), (1, 1, 1))

    @classmethod
    def from_matrix(cls, rows) -> "SignedPerm":
        perm, signs = [], []
        for row in rows:
            nonzero = [(j, v) for j, v in enumerate(row) if v]
            if len(nonzero) != 1 or nonzero[0][1] not in (-1, 1):
                raise ValueError(f"row {row} is not a signed unit row")
            perm.append(nonzero[0][0])
            signs.append(nonzero[0][1])
        return cls(tuple(perm), tuple(signs))

    def matrix(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(
            tuple(self.signs[i] if self.perm[i] == j else 0 for j in range(3)) for i in range(3)
        )

    def column(self, j: int) -> tuple[int, int, int]:
        return tuple(self.signs[i] if self.perm[i] == j else 0 for i in range(3))

    def apply(self, v: Vec3) -> Vec3:
        return Vec3(*(s * v[p] for p, s in zip(self.perm, self.signs)))

    def __matmul__(self, other: "SignedPerm") -> "SignedPerm":
        perm = tuple(other.perm[self.perm[i]] for i in range(3))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(3))
        return SignedPerm(perm, signs)

    def inverse(self) -> "SignedPerm":
        perm, signs = [0, 0, 0], [0, 0, 0]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPerm(tuple(perm), tuple(signs))

    def power(self, k: int) -> "SignedPerm":
        base = self if k >= 0 else self.inverse()
        result = SignedPerm.identity()
        for _ in range(abs(k)):
            result = result @ base
        return result

    @property
    def determinant(self) -> int:
        return _permutation_sign(self.perm) * self.signs[0] * self.signs[1] * self.signs[2]

    @property
    def order(self) -> int:
        k, current = 1, self
        while current != IDENTITY:
            current = current @ self
            k += 1
        return k

    def is_identity(self) -> bool:
        return self == IDENTITY


IDENTITY = SignedPerm.identity()

# Fixed enumeration of the point group of the tessellation; identity first.
ALL_SIGNED_PERMS: tuple[SignedPerm, ...] = tuple(
    SignedPerm(perm, signs)
    for perm in itertools.permutations(range(3))
    for signs in itertools.product((1, -1), repeat=3)
)


@dataclass(frozen=True)
class Isometry:
    linear: SignedPerm
    translation: Vec3

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(IDENTITY, Vec3.zero())

    @classmethod
    def translation_by(cls, v: Vec3) -> "Isometry":
        return cls(IDENTITY, v)

    def __call__(self, point: Vec3) -> Vec3:
        return self.linear.apply(point) + self.translation

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return compose(self, other)

    def is_identity(self) -> bool:
        return self.linear.is_identity() and self.translation.is_zero()

    def __str__(self) -> str:
        return f"x -> {self.linear.matrix()} x + {self.translation}"


def compose(g: Isometry, h: Isometry) -> Isometry:
    """The isometry x -> g(h(x))"""
    return Isometry(g.linear @ h.linear, g.linear.apply(h.translation) + g.translation)


def inverse(g: Isometry) -> Isometry:
    inv = g.linear.inverse()
    return Isometry(inv, -inv.apply(g.translation))


def power(g: Isometry, k: int) -> Isometry:
    base = g if k >= 0 else inverse(g)
    result = Isometry.identity()
    for _ in range(abs(k)):
        result = compose(result, base)
    return result


def conjugate(x: Isometry, g: Isometry) -> Isometry:
    """x g x^-1"""
    return compose(compose(x, g), inverse(x))


def preserves_tessellation(g: Isometry) -> bool:
    return g.translation.is_integral()


@total_ordering
@dataclass(frozen=True)
class QuadMagnitude:
    """The non-negative number coefficient * sqrt(radicand), kept symbolic"""

    coefficient: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "coefficient", _rational(self.coefficient))
        if self.coefficient < 0 or self.radicand not in (1, 2, 3):
            raise ValueError(f"invalid magnitude {self.coefficient}*sqrt({self.radicand})")

    def squared(self) -> Fraction:
        return self.coefficient * self.coefficient * self.radicand

    def __lt__(self, other: "QuadMagnitude") -> bool:
        if self.radicand == other.radicand:
            return self.coefficient < other.coefficient
        return self.squared() < other.squared()

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coefficient)
        return f"{self.coefficient}*sqrt{self.radicand}"


@dataclass(frozen=True)
class TwistData:
    axis_point: Vec3
    axis_direction: Vec3
    rotation_order: int
    translational_component: Vec3
    norm_class: QuadMagnitude
    linear: SignedPerm

    @property
    def axial_coefficient(self) -> Fraction:
        """Signed lambda with translational_component = lambda * axis_direction"""
        d = self.axis_direction
        return self.translational_component.dot(d) / d.dot(d)

    def to_isometry(self) -> Isometry:
        p = self.axis_point
        return Isometry(self.linear, p - self.linear.apply(p) + self.translational_component)


def axis_direction(linear: SignedPerm) -> Vec3:
    """Canonical primitive direction of the axis of a proper rotation"""
    n = linear.order
    powers = [linear.power(k) for k in range(n)]
    for i in range(3):
        unit = Vec3(*(1 if j == i else 0 for j in range(3)))
        total = Vec3.zero()
        for m in powers:
            total = total + m.apply(unit)
        if not total.is_zero():
            d = total.primitive()
            return max(d, -d, key=lambda v: tuple(v))
    raise InternalInconsistency(f"rotation {linear} has no fixed direction")


def analyze_twist(g: Isometry) -> TwistData:
    linear = g.linear
    if linear.determinant != 1:
        raise NotATwist("improper isometries are not twists")
    n = linear.order
    if n == 1:
        raise NotATwist("translations and the identity are not twists")

    powers = [linear.power(k) for k in range(n)]
    t_axis = Vec3.zero()
    for m in powers:
        t_axis = t_axis + m.apply(g.translation)
    t_axis = t_axis / n
    if t_axis.is_zero():
        raise NotATwist("the rotation fixes its axis pointwise")

    direction = axis_direction(linear)
    t_perp = g.translation - t_axis
    # foot of the perpendicular from the origin to the axis
    weighted = Vec3.zero()
    for k, m in enumerate(powers):
        weighted = weighted + m.apply(t_perp) * k
    axis_point = -weighted / n

    lam = t_axis.dot(direction) / direction.dot(direction)
    norm = QuadMagnitude(abs(lam), int(direction.dot(direction)))
    data = TwistData(axis_point, direction, n, t_axis, norm, linear)
    if data.to_isometry() != g:
        raise InternalInconsistency(f"axis decomposition of {g} does not reconstruct it")
    return data


class Centroid(str, Enum):
    VERTEX = "V"
    EDGE = "E"
    SQUARE = "S"
    CUBE = "C"


_CENTROID_BY_HALVES = (Centroid.VERTEX, Centroid.EDGE, Centroid.SQUARE, Centroid.CUBE)


def axis_incidence(point: Vec3, direction: Vec3) -> frozenset[Centroid]:
    """Kinds of face centroids lying on the line point + s * direction"""
    i = next(k for k in range(3) if direction[k] != 0)
    start = -point[i] * direction[i]
    found = set()
    for s in (start, start + Fraction(1, 2)):
        q = point + direction * s
        if all((2 * c).denominator == 1 for c in q):
            found.add(_CENTROID_BY_HALVES[sum(1 for c in q if c.denominator == 2)])
    return frozenset(found)


class NormClass(str, Enum):
    INTEGER = "integer"
    HALF = "half"
    THIRD = "third"

    def admits(self, coefficient: Fraction) -> bool:
        return coefficient.denominator == {NormClass.INTEGER: 1, NormClass.HALF: 2, NormClass.THIRD: 3}[self]


class TwistType(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"


@dataclass(frozen=True)
class TwistClass:
    period: int
    radicand: int
    incidence: frozenset[Centroid]
    norm: NormClass

    @property
    def direction_label(self) -> str:
        return {1: "e1", 2: "e1+e2", 3: "e1+e2+e3"}[self.radicand]

    @property
    def norm_label(self) -> str:
        if self.norm is NormClass.INTEGER:
            return "Z" if self.radicand == 1 else f"√{self.radicand}Z"
        r = self.radicand
        return f"(√{r}/{r})Z∖√{r}Z"


def _centroids(letters: str) -> frozenset[Centroid]:
    return frozenset(Centroid(c) for c in letters)


TWIST_CLASSES: dict[TwistType, TwistClass] = {
    TwistType.I: TwistClass(2, 1, _centroids("VE"), NormClass.INTEGER),
    TwistType.II: TwistClass(2, 1, _centroids("ES"), NormClass.INTEGER),
    TwistType.III: TwistClass(2, 1, _centroids("SC"), NormClass.INTEGER),
    TwistType.IV: TwistClass(2, 2, _centroids("VS"), NormClass.INTEGER),
    TwistType.V: TwistClass(2, 2, _centroids("E"), NormClass.HALF),
    TwistType.VI: TwistClass(2, 2, _centroids("EC"), NormClass.INTEGER),
    TwistType.VII: TwistClass(2, 2, _centroids("S"), NormClass.HALF),
    TwistType.VIII: TwistClass(3, 3, _centroids("VC"), NormClass.INTEGER),
    TwistType.IX: TwistClass(3, 3, frozenset(), NormClass.THIRD),
    TwistType.X: TwistClass(4, 1, _centroids("VE"), NormClass.INTEGER),
    TwistType.XI: TwistClass(4, 1, _centroids("SC"), NormClass.INTEGER),
}


def classify_twist_type(t: TwistData) -> TwistType:
    incidence = axis_incidence(t.axis_point, t.axis_direction)
    for twist_type, cls in TWIST_CLASSES.items():
        if (
            cls.period == t.rotation_order
            and cls.radicand == t.norm_class.radicand
            and cls.incidence == incidence
            and cls.norm.admits(t.norm_class.coefficient)
        ):
            return twist_type
    raise Unclassifiable(
        f"order {t.rotation_order}, direction {t.axis_direction}, incidence "
        f"{sorted(c.value for c in incidence)}, norm {t.norm_class}"
    )


HALF_TURN_Z = SignedPerm((0, 1, 2), (-1, -1, 1))
HALF_TURN_XY = SignedPerm((1, 0, 2), (1, 1, -1))
QUARTER_TURN_Z = SignedPerm((1, 0, 2), (-1, 1, 1))
# (x, y, z) -> (z, x, y) and its inverse (x, y, z) -> (y, z, x)
THREE_FOLD = SignedPerm((2, 0, 1), (1, 1, 1))
THREE_FOLD_INVERSE = SignedPerm((1, 2, 0), (1, 1, 1))


def _rep(linear: SignedPerm, *t: Number) -> Isometry:
    return Isometry(linear, Vec3(*t))


def twist_type_representatives() -> dict[TwistType, Isometry]:
    """One canonical twist of each class"""
    return {
        TwistType.I: _rep(HALF_TURN_Z, 0, 0, 1),
        TwistType.II: _rep(HALF_TURN_Z, 1, 0, 1),
        TwistType.III: _rep(HALF_TURN_Z, 1, 1, 1),
        TwistType.IV: _rep(HALF_TURN_XY, 1, 1, 0),
        TwistType.V: _rep(HALF_TURN_XY, 1, 0, 0),
        TwistType.VI: _rep(HALF_TURN_XY, 1, 1, 1),
        TwistType.VII: _rep(HALF_TURN_XY, 1, 0, 1),
        TwistType.VIII: _rep(THREE_FOLD, 1, 1, 1),
        TwistType.IX: _rep(THREE_FOLD_INVERSE, 1, 0, 0),
        TwistType.X: _rep(QUARTER_TURN_Z, 0, 0, 1),
        TwistType.XI: _rep(QUARTER_TURN_Z, 1, 0, 1),
    }


class Handedness(str, Enum):
    VERTEX_AXIS = "vertex-axis"
    RIGHT_PETRIE = "right-petrie"
    LEFT_PETRIE = "left-petrie"


def petrie_index(t: TwistData) -> int:
    """The integer m = sqrt(3) * |translational component| of a 3-fold twist"""
    if t.rotation_order != 3:
        raise NotThreeFold(f"rotation order is {t.rotation_order}")
    m = 3 * t.norm_class.coefficient
    if m.denominator != 1:
        raise InternalInconsistency(f"3-fold twist with translation {t.translational_component}")
    return int(m)


def petrie_handedness(t: TwistData) -> Handedness:
    """
    Handedness of the Petrie polygon a 3-fold twist runs along, read from its
    sense of rotation and the direction it advances.

    The shortcut "right when m = 1 mod 3, left when m = 2 mod 3" holds only
    for sigma1 of a tricosm twistoid in its normalized sense, (y, z, x) with
    positive axial part. For the opposite sense the shortcut disagrees, e.g.
    (y, z, x) + (-2, 1, 0) has m = 1 and runs a left Petrie polygon.
    """
    m = petrie_index(t)
    if m % 3 == 0:
        return Handedness.VERTEX_AXIS
    flips = SignedPerm((0, 1, 2), tuple(int(c) for c in t.axis_direction))
    normalized = flips @ t.linear @ flips
    # (y, z, x) advancing along +(1, 1, 1) runs a right Petrie polygon;
    # an improper sign flip reverses the sense of the normalized rotation
    sense = (normalized == THREE_FOLD_INVERSE) == (flips.determinant == 1)
    right = sense == (t.axial_coefficient > 0)
    return Handedness.RIGHT_PETRIE if right else Handedness.LEFT_PETRIE


def realizable_rotation_orders() -> frozenset[int]:
    """Rotation orders of all twists of the tessellation, by exhaustive search"""
    orders = set()
    for linear in ALL_SIGNED_PERMS:
        for t in itertools.product((0, 1), repeat=3):
            try:
                orders.add(analyze_twist(Isometry(linear, Vec3(*t))).rotation_order)
            except NotATwist:
                continue
    logger.debug(f"twist rotation orders found: {sorted(orders)}")
    return frozenset(orders)

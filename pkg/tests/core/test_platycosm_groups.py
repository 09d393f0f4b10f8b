"""
Tests for twistoid group construction and exact group queries

These tests validate:
1. Generators built from parameters
2. Translation lattices against their closed forms
3. Membership and normalization
4. Fixed-point-freeness and duality
"""

from fractions import Fraction

import pytest
from hypothesis import given, seed, settings, strategies as st

from twistoid_cli.config import RANDOM_SEED
from twistoid_cli.exact_geometry import (
    HALF_TURN_Z,
    QUARTER_TURN_Z,
    THREE_FOLD,
    Isometry,
    SignedPerm,
    TwistType,
    Vec3,
    analyze_twist,
    classify_twist_type,
    compose,
    inverse,
    power,
)
from twistoid_cli.params import (
    DicosmAxialParams,
    DicosmDiagonalParams,
    HexacosmParams,
    ManifoldKind,
    TetracosmParams,
    TricosmParams,
)
from twistoid_cli.platycosm_groups import (
    HEXACOSM_MESSAGE,
    GroupSpec,
    HexacosmImpossible,
    build_group,
    canonical_element,
    conjugate_group,
    contains,
    dual_group,
    integral_rotation_senses,
    is_fixed_point_free_witness,
    normalizes,
    same_group,
    translation_lattice,
)
from twistoid_cli.reporting import table1_csv
from twistoid_cli.twistoid_classifier import GridBounds, enumerate_params

SMALL_BOUNDS = GridBounds(max_c=1, max_p2=4, max_q3=2, max_n=2, max_m=3, max_ab=2, max_pq=2)
SAMPLE_PARAMS = [
    params
    for kind in (ManifoldKind.DICOSM_AXIAL, ManifoldKind.DICOSM_DIAGONAL, ManifoldKind.TRICOSM, ManifoldKind.TETRACOSM)
    for params in enumerate_params(kind, SMALL_BOUNDS)
]


def _translation(x, y, z) -> Isometry:
    return Isometry.translation_by(Vec3(x, y, z))


class TestBuildGroup:
    """Test generator construction"""

    def test_hexacosm_is_impossible(self):
        with pytest.raises(HexacosmImpossible) as exc_info:
            build_group(HexacosmParams())
        assert "no 6-fold twists" in str(exc_info.value)
        assert str(exc_info.value) == HEXACOSM_MESSAGE

    def test_hexacosm_message_points_at_the_twist_table(self):
        assert "no 6-fold twist type exists in Table 1" in HEXACOSM_MESSAGE
        periods = {line.split(",")[1] for line in table1_csv().splitlines()[1:]}
        assert periods == {"2", "3", "4"}

    def test_dicosm_axial_generators(self):
        group = build_group(DicosmAxialParams(1, 0, 2, 0, 2))
        assert group.rotation_order == 2
        assert group.generators == (
            Isometry(HALF_TURN_Z, Vec3(0, 0, 1)),
            Isometry(HALF_TURN_Z, Vec3(2, 0, 1)),
            Isometry(HALF_TURN_Z, Vec3(0, 2, 1)),
        )

    def test_tetracosm_half_turn(self):
        group = build_group(TetracosmParams(1, 2, 0))
        assert group.generators[0] == Isometry(QUARTER_TURN_Z, Vec3(0, 0, 1))
        assert group.generators[1] == Isometry(HALF_TURN_Z, Vec3(2, 0, 2))
        assert analyze_twist(group.generators[1]).axis_point == Vec3(1, 0, 0)

    def test_tricosm_base_twist_is_a_petrie_twist(self):
        group = build_group(TricosmParams(1, 1, 0))
        sigma = group.base_twist
        assert sigma.translation.is_integral()
        assert classify_twist_type(analyze_twist(sigma)) is TwistType.IX
        assert analyze_twist(sigma).axis_point == Vec3(Fraction(1, 3), Fraction(-1, 3), 0)

    def test_tricosm_third_generator_squares_to_the_product(self):
        group = build_group(TricosmParams(2, 2, 1))
        s1, s2, s3 = group.generators
        assert power(s3, 2) == compose(s1, s2)

    @pytest.mark.parametrize("M", range(1, 10))
    def test_integral_rotation_senses(self, M):
        senses = integral_rotation_senses(M)
        assert len(senses) == (2 if M % 3 == 0 else 1)
        if M % 3 == 0:
            assert senses[0] == THREE_FOLD

    @pytest.mark.parametrize("params", SAMPLE_PARAMS, ids=str)
    def test_generators_preserve_the_tessellation(self, params):
        group = build_group(params)
        assert all(g.translation.is_integral() for g in group.generators)
        assert group.kind is params.kind


class TestTranslationLattice:
    """Test translation lattices of twistoid groups"""

    def test_tetracosm_lattice(self):
        lattice = translation_lattice(build_group(TetracosmParams(1, 2, 0)))
        assert lattice.basis == ((0, 0, 4), (2, 0, 0), (0, -2, 0))
        assert lattice.index == 16

    def test_tricosm_lattice(self):
        lattice = translation_lattice(build_group(TricosmParams(3, 1, 0)))
        assert lattice.basis == ((3, 3, 3), (1, 0, -1), (0, 1, -1))
        assert lattice.index == 9

    def test_dicosm_axial_lattice(self):
        lattice = translation_lattice(build_group(DicosmAxialParams(1, 0, 2, 0, 2)))
        assert lattice.basis == ((0, 0, 2), (2, 0, 0), (0, 2, 0))
        assert lattice.index == 8

    @pytest.mark.parametrize("params", SAMPLE_PARAMS, ids=str)
    def test_lattice_vectors_are_group_elements(self, params):
        group = build_group(params)
        lattice = translation_lattice(group)
        for row in lattice.basis + lattice.hermite_form:
            assert contains(group, _translation(*row))

    def test_lattice_of_a_group_without_parameters(self):
        group = build_group(TetracosmParams(1, 1, 1))
        bare = GroupSpec(group.kind, group.generators, group.rotation_order)
        assert translation_lattice(bare).hermite_form == translation_lattice(group).hermite_form


class TestMembership:
    """Test contains and canonical elements"""

    @pytest.fixture
    def group(self):
        return build_group(DicosmAxialParams(1, 0, 2, 0, 2))

    def test_generator_square_is_a_translation(self, group):
        sigma_squared = power(group.base_twist, 2)
        assert sigma_squared == _translation(0, 0, 2)
        assert contains(group, sigma_squared)

    def test_pure_rotation_is_not_in_the_group(self, group):
        assert not contains(group, Isometry(HALF_TURN_Z, Vec3.zero()))

    def test_translations(self, group):
        assert not contains(group, _translation(1, 0, 0))
        assert contains(group, _translation(2, 0, 0))

    def test_wrong_linear_part(self, group):
        assert canonical_element(group, Isometry(QUARTER_TURN_Z, Vec3(0, 0, 1))) is None

    @pytest.mark.parametrize("params", SAMPLE_PARAMS[::7], ids=str)
    def test_closed_under_products_and_inverses(self, params):
        group = build_group(params)
        words = list(group.generators)
        for g in group.generators:
            for h in group.generators:
                words.append(compose(g, h))
                words.append(compose(g, inverse(h)))
        for w in words:
            assert contains(group, w)
            assert contains(group, inverse(w))
            element = canonical_element(group, w)
            assert element.coset_vector.is_zero()


class TestNormalizes:
    """Test normalization by symmetries of the tessellation"""

    def test_generators_normalize(self):
        group = build_group(DicosmAxialParams(1, 0, 3, 1, 2))
        assert all(normalizes(group, g) for g in group.generators)

    def test_horizontal_reflection(self):
        reflection = Isometry(SignedPerm((0, 1, 2), (1, 1, -1)), Vec3.zero())
        for params in (DicosmAxialParams(1, 0, 2, 0, 2), DicosmAxialParams(2, 0, 5, 3, 3)):
            assert normalizes(build_group(params), reflection)

    def test_unit_translation_needs_integral_p2(self):
        shift = _translation(1, 0, 0)
        assert not normalizes(build_group(DicosmAxialParams(1, 0, 3, 0, 2)), shift)
        assert normalizes(build_group(DicosmAxialParams(1, 0, 2, 0, 2)), shift)


class TestFixedPointFree:
    """Test the fixed-point-freeness witness"""

    @pytest.mark.parametrize("params", SAMPLE_PARAMS, ids=str)
    def test_valid_groups_act_freely(self, params):
        assert is_fixed_point_free_witness(build_group(params))

    def test_tetracosm_half_offset(self):
        assert is_fixed_point_free_witness(build_group(TetracosmParams(1, 1, 1)), word_length_bound=5)

    def test_corrupted_group(self):
        group = build_group(DicosmAxialParams(1, 0, 2, 0, 2))
        corrupted = GroupSpec(
            group.kind, (Isometry(HALF_TURN_Z, Vec3.zero()),) + group.generators[1:], group.rotation_order
        )
        assert not is_fixed_point_free_witness(corrupted)


class TestDuality:
    """Test conjugation by the vertex-to-cube-centre translation"""

    def test_tetracosm_dual_axis_passes_through_cube_centres(self):
        group = build_group(TetracosmParams(1, 2, 0))
        assert classify_twist_type(analyze_twist(group.base_twist)) is TwistType.X
        dual = dual_group(group)
        assert dual.kind is group.kind
        assert classify_twist_type(analyze_twist(dual.base_twist)) is TwistType.XI

    def test_dicosm_axial_dual_axis_type(self):
        group = build_group(DicosmAxialParams(1, 0, 2, 0, 2))
        assert classify_twist_type(analyze_twist(group.base_twist)) is TwistType.I
        assert classify_twist_type(analyze_twist(dual_group(group).base_twist)) is TwistType.III

    @pytest.mark.parametrize("params", SAMPLE_PARAMS[::5], ids=str)
    def test_double_dual_is_conjugation_by_a_unit_diagonal(self, params):
        group = build_group(params)
        twice = dual_group(dual_group(group))
        shifted = conjugate_group(group, _translation(1, 1, 1))
        assert twice.generators == shifted.generators
        assert same_group(twice, shifted)

    @seed(RANDOM_SEED)
    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(SAMPLE_PARAMS))
    def test_dual_group_acts_freely(self, params):
        assert is_fixed_point_free_witness(dual_group(build_group(params)))

"""
Tests for the closed-form twistoid classification

These tests validate:
1. Parameter validation and normalization
2. Flag counts and flag-orbit counts
3. The rigid and deformable symmetry families of the axial dicosm
4. Reading parameters back from groups and duality
5. Grid enumeration and the family catalog
"""

from dataclasses import replace
from fractions import Fraction

import pytest

from twistoid_cli.params import (
    DicosmAxialParams,
    DicosmDiagonalParams,
    HexacosmParams,
    ManifoldKind,
    TetracosmParams,
    TricosmParams,
)
from twistoid_cli.platycosm_groups import HexacosmImpossible, build_group, conjugate_group
from twistoid_cli.exact_geometry import Isometry, SignedPerm, Vec3
from twistoid_cli.twistoid_classifier import (
    ALPHA,
    ALPHABETA,
    BETA,
    CHI,
    ETA,
    GAMMA1,
    GAMMA2,
    ZETA,
    DeformableClass,
    GridBounds,
    InvalidParameters,
    canonical_params,
    classify,
    deformable_class_dicosm_axial,
    dicosm_axial_deformable_flags,
    dual_params,
    enumerate_params,
    family_catalog,
    flag_bounded_params,
    flag_count,
    params_from_group,
    realized_families,
    rigid_part_dicosm_axial,
    symmetry_predicates,
    table2_grid,
    table2_witnesses,
    validate,
)

TABLE2_FAMILIES = {f"{label}|{column.value}" for params, label, column in table2_witnesses()}
EMPTY_TABLE2_CELLS = 7


class TestValidate:
    """Test parameter validation and normalization"""

    def test_half_p1_requires_odd_p2(self):
        with pytest.raises(InvalidParameters) as exc_info:
            validate(DicosmAxialParams(1, 1, 2, 1, 1))
        assert "p2" in str(exc_info.value)

    def test_half_p1_with_integral_q3_requires_odd_p3(self):
        with pytest.raises(InvalidParameters):
            validate(DicosmAxialParams(1, 1, 3, 2, 2))
        assert validate(DicosmAxialParams(1, 1, 3, 3, 2)) == DicosmAxialParams(1, 1, 3, 1, 2)

    @pytest.mark.parametrize(
        "params",
        [
            DicosmAxialParams(0, 0, 2, 0, 2),
            DicosmAxialParams(1, 2, 3, 0, 2),
            DicosmAxialParams(1, 0, 0, 0, 2),
            DicosmAxialParams(1, 0, 2, 0, 0),
            DicosmDiagonalParams(2, 1, 3, 1, 1),
            DicosmDiagonalParams(1, 1, 4, 1, 1),
            TricosmParams(0, 1, 0),
            TricosmParams(1, 0, 0),
            TricosmParams(1, -1, 2),
            TetracosmParams(1, 0, 0),
            TetracosmParams(-1, 1, 0),
        ],
        ids=str,
    )
    def test_degenerate_inputs_are_rejected(self, params):
        with pytest.raises(InvalidParameters):
            validate(params)

    def test_tetracosm_normalization(self):
        assert validate(TetracosmParams(1, 0, 1)) == TetracosmParams(1, 1, 0)
        assert validate(TetracosmParams(1, -1, 3)) == TetracosmParams(1, 3, 1)

    def test_tricosm_normalization(self):
        assert validate(TricosmParams(2, 0, 3)) == TricosmParams(2, 3, 0)

    def test_cube_centre_axis_puts_sigma1_on_a_vertex(self):
        # p1 = 1/2 with odd q3 and even p3 - p1 leaves an axis through cube centres
        assert validate(DicosmAxialParams(1, 1, 3, 1, 1)) == DicosmAxialParams(1, 0, 1, 0, 2)

    def test_swapped_axes_share_one_form(self):
        assert validate(DicosmAxialParams(1, 0, 2, 0, 1)) == DicosmAxialParams(1, 0, 1, 0, 2)
        assert validate(DicosmAxialParams(1, 0, 10, 5, 2)) == DicosmAxialParams(1, 0, 4, 2, 5)

    def test_reflected_offsets_share_one_form(self):
        assert validate(DicosmAxialParams(1, 0, 5, 4, 2)) == DicosmAxialParams(1, 0, 5, 1, 2)
        assert validate(DicosmDiagonalParams(2, 0, 8, 6, 2)) == DicosmDiagonalParams(2, 0, 8, 2, 2)
        assert validate(TricosmParams(2, 1, 2)) == TricosmParams(2, 2, 1)

    def test_p3_is_reduced_modulo_the_axis_spacing(self):
        base = DicosmAxialParams(1, 0, 5, 2, 3)
        for k in (-2, 1, 3):
            shifted = replace(base, P3=base.P3 + 5 * k)
            assert validate(shifted) == base
            assert classify(shifted) == classify(base)

    def test_hexacosm(self):
        with pytest.raises(HexacosmImpossible):
            validate(HexacosmParams())


class TestFlagCount:
    """Test the closed-form flag counts"""

    def test_examples(self):
        assert flag_count(TetracosmParams(1, 2, 0)) == 192
        assert flag_count(TricosmParams(3, 1, 0)) == 144
        assert flag_count(DicosmAxialParams(1, 0, 2, 0, 2)) == 192
        assert flag_count(DicosmDiagonalParams(1, 1, 3, 1, 1)) == 48


class TestDicosmAxialSymmetries:
    """Test the rigid and deformable symmetry predicates of the axial dicosm"""

    def test_rigid_part(self):
        assert rigid_part_dicosm_axial(DicosmAxialParams(1, 0, 4, 0, 4)) == {ALPHA, BETA, ALPHABETA}
        assert rigid_part_dicosm_axial(DicosmAxialParams(1, 0, 5, 0, 5)) == frozenset()
        assert rigid_part_dicosm_axial(DicosmAxialParams(1, 0, 6, 3, 3)) == {ALPHA}

    def test_deformable_flags(self):
        assert dicosm_axial_deformable_flags(DicosmAxialParams(1, 0, 4, 0, 4)) == {
            GAMMA1: True, GAMMA2: True, ETA: True,
        }
        assert deformable_class_dicosm_axial(DicosmAxialParams(1, 0, 21, 4, 1)) is DeformableClass.FOUR

    def test_half_p1_example(self):
        # axes through edge midpoints; the diagonal symmetries would move them to vertices
        assert deformable_class_dicosm_axial(DicosmAxialParams(1, 1, 3, 1, 2)) is DeformableClass.TWO_02

    def test_deformable_orders(self):
        assert [c.order for c in DeformableClass] == [4, 2, 2, 2, 1]

    def test_implication_laws_over_a_grid(self):
        for params in enumerate_params(ManifoldKind.DICOSM_AXIAL, GridBounds(max_p2=12, max_q3=6)):
            p = symmetry_predicates(params)
            if p[GAMMA1] and p[ALPHABETA]:
                assert p[ALPHA]
            assert sum((p[ALPHA], p[BETA], p[ALPHABETA])) in (0, 1, 3)


class TestClassify:
    """Test reports for each manifold"""

    def test_most_symmetric_axial_dicosm(self):
        report = classify(DicosmAxialParams(28, 0, 4, 0, 4))
        assert report.kind is ManifoldKind.DICOSM_AXIAL
        assert report.flag_orbit_count == 12
        assert report.profile.deformable_class is DeformableClass.ONE
        assert report.profile.rigid_part == {ALPHA, BETA, ALPHABETA}
        assert report.flag_count == 48 * 28 * 16
        assert report.cube_count == Fraction(report.flag_count, 48)
        assert report.identity_component_order == 56
        assert report.family_id == "<rho' alpha' beta'>|1"

    def test_tricosm(self):
        report = classify(TricosmParams(3, 1, 1))
        assert report.flag_orbit_count == 24
        assert report.family_id == "chi"
        assert report.profile.deformable_label == "chi"

    def test_tricosm_chi_and_zeta_exclude_each_other(self):
        for params in enumerate_params(ManifoldKind.TRICOSM, GridBounds(max_m=2, max_ab=6)):
            p = symmetry_predicates(params)
            assert not (p[CHI] and p[ZETA])

    def test_tetracosm(self):
        assert classify(TetracosmParams(1, 3, 1)).flag_orbit_count == 60
        report = classify(TetracosmParams(1, 1, 1))
        assert (report.flag_count, report.flag_orbit_count) == (96, 6)
        assert report.family_id == "alpha+chi"

    def test_dicosm_diagonal(self):
        report = classify(DicosmDiagonalParams(1, 1, 3, 1, 1))
        assert (report.flag_count, report.flag_orbit_count) == (48, 6)
        assert report.family_id == "chi"

    @pytest.mark.parametrize("params", [w for w, _, _ in table2_witnesses()], ids=str)
    def test_orbit_count_divides_flag_count(self, params):
        report = classify(params)
        assert report.flag_count % report.flag_orbit_count == 0
        r = {0: 1, 1: 2, 3: 4}[len(report.profile.rigid_part)]
        assert report.flag_count // report.flag_orbit_count == (
            report.identity_component_order * 2 * r * report.profile.deformable_class.order
        )


class TestTable2:
    """Test the rigid/deformable grid of the axial dicosm"""

    def test_grid_shape(self):
        grid = table2_grid()
        assert len(grid) == 5
        cells = [cell for _, row in grid for cell in row]
        assert sum(1 for cell in cells if cell is None) == EMPTY_TABLE2_CELLS
        assert len(table2_witnesses()) == 18

    @pytest.mark.parametrize("params,label,column", table2_witnesses(), ids=str)
    def test_witness_lands_in_its_cell(self, params, label, column):
        report = classify(params)
        assert report.family_id == f"{label}|{column.value}"

    def test_scan_realizes_exactly_the_eighteen_families(self):
        families = realized_families(ManifoldKind.DICOSM_AXIAL, GridBounds(max_c=1, max_p2=42, max_q3=10))
        assert set(families) == TABLE2_FAMILIES


class TestCanonicalAndDual:
    """Test reading parameters back from groups"""

    @pytest.mark.parametrize(
        "params",
        [
            DicosmAxialParams(1, 0, 2, 0, 2),
            DicosmAxialParams(1, 1, 3, 1, 1),
            DicosmAxialParams(2, 0, 5, 2, 3),
            DicosmDiagonalParams(2, 0, 4, 2, 1),
            DicosmDiagonalParams(1, 1, 3, 1, 1),
            TricosmParams(1, 2, 1),
            TricosmParams(3, 1, 0),
            TetracosmParams(1, 1, 1),
            TetracosmParams(2, 3, 1),
        ],
        ids=str,
    )
    def test_canonical_params_keep_the_classification(self, params):
        canonical = canonical_params(params)
        assert canonical.kind is params.kind
        assert classify(canonical).invariants() == classify(params).invariants()
        assert canonical_params(canonical) == canonical

    @pytest.mark.parametrize(
        "params",
        [
            DicosmAxialParams(1, 1, 3, 1, 1),
            DicosmAxialParams(1, 0, 6, 3, 3),
            TricosmParams(2, 1, 1),
            TetracosmParams(1, 1, 1),
            TetracosmParams(1, 2, 1),
        ],
        ids=str,
    )
    def test_dual_keeps_the_classification(self, params):
        dual = dual_params(params)
        assert classify(dual).invariants() == classify(params).invariants()
        assert classify(dual).family_id == classify(params).family_id
        assert dual_params(dual) == validate(params)
        assert canonical_params(params) == validate(params)

    @pytest.mark.parametrize(
        "kind",
        [ManifoldKind.DICOSM_AXIAL, ManifoldKind.DICOSM_DIAGONAL, ManifoldKind.TRICOSM, ManifoldKind.TETRACOSM],
        ids=lambda kind: kind.value,
    )
    def test_duality_is_an_involution_over_the_grid(self, kind):
        for params in enumerate_params(kind, GridBounds(max_c=2)):
            dual = dual_params(params)
            assert dual_params(dual) == params
            assert classify(dual).family_id == classify(params).family_id
            assert canonical_params(params) == params

    def test_plane_symmetries_read_back_the_same_over_the_grid(self):
        symmetries = [
            SignedPerm((1, 0, 2), (1, 1, 1)),
            SignedPerm((0, 1, 2), (-1, 1, 1)),
            SignedPerm((1, 0, 2), (-1, 1, -1)),
        ]
        for params in enumerate_params(ManifoldKind.DICOSM_AXIAL, GridBounds(max_p2=8, max_q3=4)):
            group = build_group(params)
            for linear in symmetries:
                conjugated = conjugate_group(group, Isometry(linear, Vec3(0, 0, 0)))
                assert params_from_group(conjugated) == params

    def test_tetracosm_dual_is_unchanged(self):
        assert dual_params(TetracosmParams(1, 1, 1)) == TetracosmParams(1, 1, 1)

    def test_dual_of_an_edge_axis_twistoid_has_p1_zero(self):
        assert dual_params(DicosmAxialParams(1, 1, 3, 1, 1)).P1 == 0

    def test_conjugate_groups_read_back_the_same(self):
        params = DicosmAxialParams(1, 0, 5, 2, 3)
        group = build_group(params)
        swap = Isometry(SignedPerm((1, 0, 2), (1, 1, 1)), Vec3(0, 0, 0))
        assert params_from_group(conjugate_group(group, swap)) == params_from_group(group)


class TestEnumeration:
    """Test grid enumeration and the family catalog"""

    def test_enumeration_is_sorted_and_validated(self):
        params = enumerate_params(ManifoldKind.TETRACOSM, GridBounds(max_c=1, max_pq=3))
        assert params == sorted(params)
        assert all(validate(p) == p for p in params)
        assert TetracosmParams(1, 1, 0) in params
        assert TetracosmParams(1, 0, 1) not in params

    def test_hexacosm_grid(self):
        with pytest.raises(HexacosmImpossible):
            enumerate_params(ManifoldKind.HEXACOSM)

    @pytest.mark.parametrize(
        "kind",
        [ManifoldKind.DICOSM_AXIAL, ManifoldKind.DICOSM_DIAGONAL, ManifoldKind.TRICOSM, ManifoldKind.TETRACOSM],
        ids=lambda kind: kind.value,
    )
    def test_flag_bounded_params_match_a_wide_grid(self, kind):
        wide = GridBounds(max_c=5, max_p2=11, max_q3=10, max_n=10, max_m=5, max_ab=2, max_pq=2)
        expected = [p for p in enumerate_params(kind, wide) if flag_count(p) <= 240]
        assert flag_bounded_params(kind, 240) == expected

    def test_flag_bounded_params_reach_long_axes(self):
        params = flag_bounded_params(ManifoldKind.DICOSM_AXIAL, 2304)
        assert DicosmAxialParams(1, 0, 48, 1, 1) in params
        assert all(flag_count(p) <= 2304 for p in params)

    def test_tetracosm_families(self):
        families = realized_families(ManifoldKind.TETRACOSM)
        assert set(families) == {"alpha+chi", "alpha", "chi", "none"}

    def test_tricosm_families(self):
        assert set(realized_families(ManifoldKind.TRICOSM)) == {"chi", "zeta", "none"}

    def test_catalog(self):
        catalog = family_catalog()
        assert len(catalog) == 29
        for entry in catalog:
            assert classify(entry.witness).family_id == entry.family_id
        assert len({(entry.kind, entry.family_id) for entry in catalog}) == 29

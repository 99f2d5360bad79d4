"""Tests for dual enumeration, spectral regions and gaps."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liewave.spectral import (
    GroupKind,
    GroupSpec,
    Region,
    basis_size,
    enumerate_dual,
    mode_table,
    region_of,
    spectral_gaps,
)


class TestGroupSpec:
    """Construction and validation of group specs."""

    def test_radii_are_exact(self):
        spec = GroupSpec.torus([0.5, 2], 3)
        assert spec.radii == (Fraction(1, 2), Fraction(2))
        assert spec.n_topological == 2

    def test_lie_groups_have_dimension_three(self):
        assert GroupSpec.su2(2).n_topological == 3
        assert GroupSpec.so3(2).n_topological == 3

    @pytest.mark.parametrize("kwargs", [
        dict(kind=GroupKind.TORUS, bandlimit=2, radii=()),
        dict(kind=GroupKind.TORUS, bandlimit=2, radii=(1, -1)),
        dict(kind=GroupKind.TORUS, bandlimit=0, radii=(1,)),
        dict(kind=GroupKind.SU2, bandlimit=2, radii=(1,)),
    ])
    def test_invalid_specs_raise(self, kwargs):
        with pytest.raises(ValueError):
            GroupSpec(**kwargs)

    def test_with_bandlimit_keeps_geometry(self):
        spec = GroupSpec.torus([1, 0.5], 2)
        refined = spec.with_bandlimit(4)
        assert refined.radii == spec.radii
        assert refined.bandlimit == 4


class TestEnumerateDual:
    """Truncated unitary duals."""

    def test_unit_circle(self, small_circle):
        duals = enumerate_dual(small_circle)
        assert [rep.index for rep in duals] == [(-2,), (-1,), (0,), (1,), (2,)]
        assert [rep.eigenvalue for rep in duals] == [4, 1, 0, 1, 4]
        assert all(rep.dim == 1 for rep in duals)

    def test_su2(self):
        duals = enumerate_dual(GroupSpec.su2(2))
        assert [rep.index for rep in duals] == [(0,), (1,), (2,)]
        assert [rep.dim for rep in duals] == [1, 2, 3]
        assert [rep.eigenvalue for rep in duals] == [0, Fraction(3, 4), 2]

    def test_so3_has_integer_spins_only(self):
        duals = enumerate_dual(GroupSpec.so3(2))
        assert [rep.dim for rep in duals] == [1, 3, 5]
        assert [rep.eigenvalue for rep in duals] == [0, 2, 6]

    def test_two_torus(self):
        duals = enumerate_dual(GroupSpec.torus([1, 1], 1))
        assert len(duals) == 9
        corner = next(rep for rep in duals if rep.index == (1, 1))
        assert corner.eigenvalue == 2
        assert corner.region is Region.R4

    def test_anisotropic_torus(self):
        duals = enumerate_dual(GroupSpec.torus([1, 0.5], 1))
        by_index = {rep.index: rep.eigenvalue for rep in duals}
        assert by_index[(1, 0)] == 1
        assert by_index[(0, 1)] == 4

    @pytest.mark.parametrize("spec", [GroupSpec.torus([1], 3), GroupSpec.su2(3), GroupSpec.so3(3)])
    def test_nested_in_bandlimit(self, spec):
        coarse = {rep.index for rep in enumerate_dual(spec)}
        fine = {rep.index for rep in enumerate_dual(spec.with_bandlimit(spec.bandlimit + 1))}
        assert coarse < fine

    def test_basis_size(self):
        assert basis_size(GroupSpec.su2(4)) == 1 + 4 + 9 + 16 + 25
        assert basis_size(GroupSpec.so3(3)) == 1 + 9 + 25 + 49
        assert basis_size(GroupSpec.torus([1, 1], 2)) == 25

    def test_mode_table_layout(self, su2):
        table = mode_table(su2)
        assert table.size == basis_size(su2)
        assert table.trivial_position == 0
        for rep, sl in zip(table.reps, table.slices):
            assert sl.stop - sl.start == rep.dim ** 2
            assert (table.lambda2[sl] == rep.lambda2).all()
            assert (table.resonant[sl] == (rep.eigenvalue == 1)).all()


class TestRegions:
    """Classification of eigenvalues."""

    @pytest.mark.parametrize("value,region", [
        (0, Region.R1),
        (Fraction(3, 4), Region.R2),
        (1, Region.R3),
        (Fraction(15, 4), Region.R4),
    ])
    def test_examples(self, value, region):
        assert region_of(value) is region

    def test_negative_raises(self):
        with pytest.raises(ValueError):
            region_of(-1)

    @given(st.fractions(min_value=0, max_value=100))
    def test_regions_partition_the_half_line(self, value):
        region = region_of(value)
        expected = (Region.R1 if value == 0 else Region.R2 if value < 1
                    else Region.R3 if value == 1 else Region.R4)
        assert region is expected


class TestSpectralGaps:
    """delta1, delta2 and delta3."""

    def test_unit_circle(self, small_circle):
        gaps = spectral_gaps(enumerate_dual(small_circle))
        assert gaps.delta1 == 1
        assert gaps.delta2 is None
        assert gaps.delta3 == 4

    def test_su2(self):
        gaps = spectral_gaps(enumerate_dual(GroupSpec.su2(2)))
        assert (gaps.delta1, gaps.delta2, gaps.delta3) == (Fraction(3, 4), Fraction(3, 4), 2)

    def test_large_circle(self):
        gaps = spectral_gaps(enumerate_dual(GroupSpec.torus([2], 2)))
        assert gaps.delta1 == Fraction(1, 4)
        assert gaps.delta2 == Fraction(1, 4)
        assert gaps.delta3 is None

    def test_trivial_only_raises(self):
        trivial = [rep for rep in enumerate_dual(GroupSpec.su2(1)) if rep.is_trivial]
        with pytest.raises(ValueError):
            spectral_gaps(trivial)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            spectral_gaps([])

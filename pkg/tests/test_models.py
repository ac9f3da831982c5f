from fractions import Fraction

from hypothesis import given, settings
import pytest

from opMatrix.counts import ExtendedCount, FredholmData, SpaceModel, INF, ZERO, ONE
from opMatrix.errors import ModelError, TruncationError
from opMatrix.linalg import exact_rank
from opMatrix.models import (
    UnilateralShift, BackwardShift, BilateralShift, Identity, Zero, DiagonalOp, FiniteMatrix,
    Translate, Scale, DirectSum, Dual, fredholm_profile, kernel_basis, cokernel_slots, space_data, rect_truncation,
)
from opMatrix.regions import (
    FULL, Circle, ClosedDisk, Point, combine, contains, describe, is_empty, is_equal, scale, union_of,
)
from opMatrix.spectra import SpectrumKind, spectrum
from opMatrix.utils.math import RationalComplex

from .strategies import models, sample_points

HALF = RationalComplex(Fraction(1, 2))


def test_shift_profile():
    shift = UnilateralShift()
    assert shift.data_at(0) == FredholmData.closed(0, 1)
    assert shift.data_at(1) == FredholmData.non_closed(0, 0)
    assert shift.data_at(2) == FredholmData.closed(0, 0)


def test_backward_shift_profile():
    back = BackwardShift()
    assert back.data_at(HALF) == FredholmData.closed(1, 0)
    assert back.data_at(RationalComplex(0, 1)).range_dense
    assert back.data_at(-2) == FredholmData.closed(0, 0)


def test_shift_multiplicity_scales_the_cokernel():
    assert UnilateralShift(3).data_at(0) == FredholmData.closed(0, 3)
    assert UnilateralShift(INF).data_at(0) == FredholmData.closed(0, INF)
    with pytest.raises(ModelError):
        UnilateralShift(0)


@settings(max_examples=60, deadline=None)
@given(models)
def test_dual_profile_follows_the_duality_rule(model):
    adjoint = model.dual()
    for lam in sample_points:
        assert adjoint.data_at(lam) == model.data_at(lam).dual()


@settings(max_examples=60, deadline=None)
@given(models)
def test_profile_parts_partition_the_plane(model):
    parts = fredholm_profile(model).parts
    regions = [region for region, _ in parts]
    for a in range(len(regions)):
        for b in range(a + 1, len(regions)):
            assert is_empty(combine('intersection', [regions[a], regions[b]]))
    assert is_equal(union_of(regions), FULL)
    for lam in sample_points:
        owners = [data for region, data in parts if contains(region, lam)]
        assert owners == [model.data_at(lam)]


@pytest.mark.parametrize("model, kind, expected", [
    (UnilateralShift(), SpectrumKind.LE, Circle(0, 1)),
    (UnilateralShift(), SpectrumKind.LW, Circle(0, 1)),
    (UnilateralShift(), SpectrumKind.FULL, ClosedDisk(0, 1)),
    (BackwardShift(), SpectrumKind.LW, ClosedDisk(0, 1)),
    (BackwardShift(), SpectrumKind.RW, Circle(0, 1)),
    (BilateralShift(), SpectrumKind.E, Circle(0, 1)),
    (Identity(), SpectrumKind.E, Point(1)),
    (Identity(3), SpectrumKind.E, None),
    (Translate(UnilateralShift(), 1), SpectrumKind.LE, Circle(1, 1)),
])
def test_spectra(model, kind, expected):
    region = spectrum(model, kind)
    if expected is None:
        assert describe(region) == '∅'
    else:
        assert is_equal(region, expected)


def test_identity_spectra_are_all_the_point():
    for kind in SpectrumKind:
        assert is_equal(spectrum(Identity(), kind), Point(1))


def test_scaled_spectrum_is_the_scaled_region():
    c = RationalComplex(Fraction(3, 5), Fraction(4, 5))
    model = Scale(Translate(BackwardShift(), 1), c)
    assert is_equal(spectrum(model, SpectrumKind.LW), scale(ClosedDisk(1, 1), c))


def test_scale_needs_a_rational_modulus():
    with pytest.raises(ModelError):
        Scale(UnilateralShift(), RationalComplex(1, 1))


def test_finite_matrix_eigenvalues_in_gaussian_rationals():
    rotation = FiniteMatrix(((0, -1), (1, 0)))
    assert set(rotation.eigenvalues) == {RationalComplex(0, 1), RationalComplex(0, -1)}
    assert rotation.data_at(RationalComplex(0, 1)) == FredholmData.closed(1, 1)
    assert rotation.data_at(0) == FredholmData.closed(0, 0)


def test_finite_matrix_with_irrational_eigenvalues_is_rejected():
    with pytest.raises(ModelError):
        FiniteMatrix(((0, 2), (1, 0))).profile()


def test_finite_matrix_must_be_square():
    with pytest.raises(ModelError):
        FiniteMatrix(((1, 2),))


def test_jordan_block_has_one_eigenvector():
    jordan = FiniteMatrix(((1, 1), (0, 1)))
    assert jordan.data_at(1) == FredholmData.closed(1, 1)
    kernel = kernel_basis(jordan, 1)
    assert kernel.count == ONE
    assert kernel.generator(0).coeff(0) == RationalComplex(1)


def test_backward_shift_kernel_is_geometric():
    kernel = kernel_basis(BackwardShift(), HALF)
    assert kernel.count == ONE
    vector = kernel.generator(0)
    for i in range(6):
        assert vector.coeff(i) == HALF ** i
    assert kernel.pivot(0) == 0


def test_shift_kernel_is_trivial_and_cokernel_is_spanned_by_e0():
    assert kernel_basis(UnilateralShift(), 0).count == ZERO
    slots = cokernel_slots(UnilateralShift(), 0)
    assert slots.count == ONE
    assert slots.slot(0) == 0


def test_infinite_kernels():
    zero = kernel_basis(Zero(), 0)
    assert zero.count == INF and zero.infinite
    back = kernel_basis(BackwardShift(INF), 0)
    assert back.count == INF
    assert [back.pivot(k) for k in range(3)] == [0, 2, 4]


def test_diagonal_kernel_counts_multiplicity():
    diagonal = DiagonalOp(((0, 'inf'), (Fraction(1, 2), 2)))
    assert kernel_basis(diagonal, HALF).count == ExtendedCount(2)
    assert kernel_basis(diagonal, 0).count == INF
    assert kernel_basis(diagonal, 1).count == ZERO


def test_space_data():
    assert space_data(UnilateralShift(), 0) == (SpaceModel(ZERO), SpaceModel(ONE))
    assert space_data(Identity(), 1) == (SpaceModel(INF), SpaceModel(INF))
    assert space_data(FiniteMatrix(((1, 0), (0, 1))), 5) == (SpaceModel(ZERO), SpaceModel(ZERO))


def test_shift_truncation():
    matrix = rect_truncation(UnilateralShift(), 4, 3)
    for i in range(4):
        for j in range(3):
            expected = RationalComplex(1) if i == j + 1 else RationalComplex(0)
            assert matrix[i][j] == expected
    with pytest.raises(TruncationError):
        rect_truncation(UnilateralShift(), 3, 3)


def test_direct_sum_truncation_rank():
    pair = DirectSum(UnilateralShift(), BackwardShift())
    for N in (2, 4, 8):
        matrix = rect_truncation(pair, 2 * (N + 1), 2 * N)
        assert exact_rank(matrix) == 2 * N - 1


def test_direct_sum_profile_and_kernel():
    pair = DirectSum(UnilateralShift(), BackwardShift())
    assert pair.data_at(0) == FredholmData.closed(1, 1)
    kernel = kernel_basis(pair, 0)
    assert kernel.count == ONE
    assert kernel.pivot(0) == 1


def test_dual_of_a_dual_is_the_model():
    assert Dual(UnilateralShift()).dual() == UnilateralShift()
    assert Dual(UnilateralShift()).data_at(0) == BackwardShift().data_at(0)

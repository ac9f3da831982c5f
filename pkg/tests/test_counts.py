from fractions import Fraction
import math

from hypothesis import given
import pytest

from opMatrix.counts import ExtendedCount, FredholmData, INF, ZERO, ONE, total
from opMatrix.errors import ModelError

from .strategies import counts, fredholm_data


def test_extended_arithmetic():
    assert INF + 1 == INF
    assert ExtendedCount(2) + 3 == ExtendedCount(5)
    assert ExtendedCount(3) - INF == -math.inf
    assert INF - ExtendedCount(3) == math.inf
    assert ExtendedCount(3) - ExtendedCount(5) == -2
    with pytest.raises(ArithmeticError):
        INF - INF


def test_saturating_difference():
    assert ExtendedCount(2).saturating_sub(5) == ZERO
    assert INF.saturating_sub(4) == INF
    assert INF.saturating_sub(INF) == ZERO


def test_ordering_and_totals():
    assert ZERO < ONE < INF
    assert not INF < INF
    assert total([]) == ZERO
    assert total([ONE, ExtendedCount(2)]) == ExtendedCount(3)
    assert total([ONE, INF]) == INF


def test_negative_dimension_rejected():
    with pytest.raises(ModelError):
        ExtendedCount(-1)


@pytest.mark.parametrize("value", [1.5, Fraction(3, 2), '1.5', 'two'])
def test_non_integral_counts_rejected(value):
    with pytest.raises(ValueError):
        ExtendedCount.coerce(value)


def test_integral_values_coerce():
    assert ExtendedCount.coerce(2.0) == ExtendedCount(2)
    assert ExtendedCount.coerce(Fraction(4, 2)) == ExtendedCount(2)
    assert ExtendedCount.coerce('03') == ExtendedCount(3)
    assert ExtendedCount.coerce('inf') == INF


@given(counts)
def test_count_json(count):
    assert ExtendedCount.from_json(count.to_json()) == count


def test_closed_range_shape():
    data = FredholmData.closed(0, 1)
    assert data.range_closed and not data.range_dense
    assert data.left_fredholm and data.right_fredholm
    assert data.index == -1
    assert data.left_weyl and not data.right_weyl


def test_non_closed_range_is_never_right_fredholm():
    data = FredholmData.non_closed(0, 0)
    assert data.beta == INF
    assert data.range_dense
    assert not data.left_fredholm and not data.right_fredholm


def test_inconsistent_data_rejected():
    with pytest.raises(ModelError):
        FredholmData(ZERO, ONE, True, False, ZERO)
    with pytest.raises(ModelError):
        FredholmData(ZERO, ONE, False, False, ONE)


@given(fredholm_data)
def test_dual_is_an_involution(data):
    assert data.dual().dual() == data


@given(fredholm_data)
def test_dual_swaps_kernel_with_range_closure(data):
    adjoint = data.dual()
    assert adjoint.alpha == data.closure_codim
    assert adjoint.closure_codim == data.alpha
    assert adjoint.range_closed == data.range_closed


@given(fredholm_data, fredholm_data)
def test_direct_sum_adds_kernels(first, second):
    combined = first + second
    assert combined.alpha == first.alpha + second.alpha
    assert combined.range_closed == (first.range_closed and second.range_closed)
    assert (combined + FredholmData.closed(0, 0)) == combined

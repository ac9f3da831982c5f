from hypothesis import given, settings
import pytest

from opMatrix.counts import FredholmData
from opMatrix.errors import VariantError
from opMatrix.models import UnilateralShift, BackwardShift, Identity, Zero, FiniteMatrix, BilateralShift
from opMatrix.regions import (
    Point, Circle, OpenDisk, FULL, combine, contains, describe, is_empty, is_equal, is_subset,
)
from opMatrix.spectra import SpectrumKind, spectrum
from perturbation.engine import (
    DiagonalTuple, PerturbationEngine, Reading, VariantFlag, THEOREM_KINDS, diagonal_union, hypothesis_holds,
    in_intersection, resolve_variant, theorem_terms,
)

from .strategies import finite_completions, finite_tuples, tuples


def tuple_of(*models):
    return DiagonalTuple(tuple(models))


def test_tuple_needs_two_entries():
    with pytest.raises(VariantError):
        tuple_of(UnilateralShift())


def test_reversed_dual(shift_pair):
    assert shift_pair.reversed_dual() == tuple_of(UnilateralShift(), BackwardShift())
    assert tuple_of(UnilateralShift(), Identity()).reversed_dual() == tuple_of(Identity(), BackwardShift())


def test_refinement_of_the_shift_pair(engine, shift_pair):
    assert len(engine.refine_tuple(shift_pair)) == 3
    assert len(engine.refine_tuple(tuple_of(Identity(), Identity()))) == 2


def test_left_essential_of_the_shift_pair(engine, shift_pair):
    report = engine.intersection_spectrum(shift_pair, SpectrumKind.LE)
    assert is_equal(report.result, Circle(0, 1))
    assert describe(report.result) == '{|λ|=1}'
    assert report.variant is VariantFlag.PLAIN_EMBEDDING
    assert not report.regular_everywhere


def test_left_essential_of_zero_and_identity(engine):
    report = engine.intersection_spectrum(tuple_of(Zero(), Identity()), SpectrumKind.LE)
    assert is_equal(report.result, combine('union', [Point(0), Point(1)]))
    assert describe(report.result) == '{0} ∪ {1}'


def test_left_weyl_warns_outside_the_hypothesis(engine, shift_pair):
    report = engine.intersection_spectrum(shift_pair, SpectrumKind.LW)
    assert is_equal(report.result, Circle(0, 1))
    assert report.warnings
    assert is_empty(report.hypothesis_region)
    plain = engine.hypothesis_region(shift_pair, SpectrumKind.LE)
    assert contains(plain, 0) and contains(plain, 2)
    assert not contains(plain, 1)
    assert all(text for text in report.to_json()["warnings"])


def test_fixed_reading_uses_the_origin(engine, shift_pair):
    region = engine.hypothesis_region(shift_pair, SpectrumKind.LW, reading=Reading.FIXED)
    assert is_empty(region)
    region = engine.hypothesis_region(shift_pair, SpectrumKind.LE, reading='fixed')
    assert is_equal(region, FULL)


def test_finite_matrices_have_empty_intersections(engine):
    t = tuple_of(FiniteMatrix(((1, 0), (0, 2))), FiniteMatrix(((0, 1), (0, 0))))
    for kind in THEOREM_KINDS:
        report = engine.intersection_spectrum(t, kind)
        assert is_empty(report.result)
        assert engine.union_equality_check(t, kind).holds
    assert engine.inclusion_bounds_check(t).passed



@settings(max_examples=20, deadline=None)
@given(finite_tuples)
def test_random_finite_tuples_have_empty_intersections(t):
    engine = PerturbationEngine('WARNING')
    for kind in THEOREM_KINDS:
        assert is_empty(engine.intersection_spectrum(t, kind).result)


@settings(max_examples=20, deadline=None)
@given(finite_completions())
def test_finite_completions_have_only_eigenvalues(completion):
    t, matrix = completion
    assert is_empty(spectrum(matrix, SpectrumKind.E))
    assert is_empty(spectrum(matrix, SpectrumKind.W))
    assert is_equal(spectrum(matrix, SpectrumKind.FULL), diagonal_union(t, SpectrumKind.FULL))


@pytest.mark.parametrize("models", [
    (UnilateralShift(), BackwardShift()),
    (Zero(), Identity()),
    (UnilateralShift(), BilateralShift(), BackwardShift()),
    (UnilateralShift('inf'), Zero(), BackwardShift('inf')),
])
def test_inclusion_bounds(engine, models):
    report = engine.inclusion_bounds_check(DiagonalTuple(models))
    assert report.passed
    assert report.to_json()["passed"]


def test_left_essential_lies_between_first_entry_and_union(engine):
    t = tuple_of(BackwardShift(), UnilateralShift(), Identity())
    report = engine.intersection_spectrum(t, SpectrumKind.LE)
    assert is_subset(spectrum(BackwardShift(), SpectrumKind.LE), report.result)
    assert is_subset(report.result, diagonal_union(t, SpectrumKind.LE))


def test_left_essential_gap_from_the_union(engine):
    t = tuple_of(UnilateralShift('inf'), Zero())
    report = engine.intersection_spectrum(t, SpectrumKind.LE)
    # β(D_1) = ∞ inside the disk hides σ_le(D_2) = {0}
    assert is_equal(report.result, Circle(0, 1))
    check = engine.union_equality_check(t, SpectrumKind.LE)
    assert not check.holds
    assert is_equal(check.witness, Point(0))


def test_dense_range_region(engine):
    assert is_equal(engine.dense_range_region(tuple_of(Identity(), Identity())),
                    combine('complement', [Point(1)]))
    shifts = tuple_of(UnilateralShift(), UnilateralShift())
    assert is_equal(engine.dense_range_region(shifts), combine('complement', [OpenDisk(0, 1)]))


def test_regular_region(engine, shift_pair):
    assert is_equal(engine.regular_region(shift_pair), combine('complement', [Circle(0, 1)]))


def test_essential_terms_are_labelled():
    datas = (FredholmData.closed(0, 'inf'), FredholmData.closed(1, 1), FredholmData.closed('inf', 0))
    labels = [label for label, _ in theorem_terms(SpectrumKind.E, datas)]
    assert labels[:2] == ['σ_le(D_1)', 'σ_re(D_3)']
    assert 'Δ_2^le' in labels and 'Δ_2^re' in labels
    assert not in_intersection(SpectrumKind.E, datas)


def test_hypotheses_at_one_point():
    datas = (FredholmData.closed(0, 1), FredholmData.closed(1, 0))
    assert hypothesis_holds(SpectrumKind.LE, VariantFlag.PLAIN_EMBEDDING, datas)
    assert not hypothesis_holds(SpectrumKind.LW, VariantFlag.STRICT_EMBEDDING, datas)
    assert not hypothesis_holds(SpectrumKind.LW, VariantFlag.BETA_N_INFINITE, datas)
    assert hypothesis_holds(SpectrumKind.E, VariantFlag.UFDS, datas)
    non_closed = (FredholmData.non_closed(0, 0), FredholmData.closed(0, 0))
    assert not hypothesis_holds(SpectrumKind.LE, VariantFlag.PLAIN_EMBEDDING, non_closed)


def test_variants_are_checked_against_the_kind():
    assert resolve_variant(SpectrumKind.E) is VariantFlag.STRONG_EMBEDDING
    assert resolve_variant(SpectrumKind.RW, 'AlphaOneInfinite') is VariantFlag.ALPHA_ONE_INFINITE
    with pytest.raises(VariantError):
        resolve_variant(SpectrumKind.LE, 'Ufds')
    with pytest.raises(VariantError):
        resolve_variant(SpectrumKind.W)
    with pytest.raises(VariantError):
        resolve_variant(SpectrumKind.LE, 'Bogus')


def test_reports_serialise(engine, shift_pair):
    reports = engine.all_reports(shift_pair)
    assert set(reports) == set(THEOREM_KINDS)
    data = reports[SpectrumKind.E].to_json()
    assert data["kind"] == 'E'
    assert data["result"]["describe"] == '{|λ|=1}'
    assert [term["label"] for term in data["leading_terms"]] == ['σ_le(D_1)', 'σ_re(D_2)']


def test_essential_of_mixed_triple(engine):
    t = tuple_of(UnilateralShift(), Zero(), BackwardShift())
    report = engine.intersection_spectrum(t, SpectrumKind.E)
    assert is_equal(report.result, combine('union', [Circle(0, 1), Point(0)]))
    assert describe(report.result) == '{|λ|=1} ∪ {0}'
    assert not contains(report.result, 2)


@settings(max_examples=50)
@given(tuples)
def test_random_tuples_stay_within_their_bounds(t):
    assert PerturbationEngine('WARNING').inclusion_bounds_check(t).passed


@settings(max_examples=25)
@given(tuples)
def test_equality_checks_agree_with_the_union(t):
    engine = PerturbationEngine('WARNING')
    for kind in THEOREM_KINDS:
        if engine.union_equality_check(t, kind).holds:
            assert is_equal(engine.intersection_spectrum(t, kind).result, diagonal_union(t, kind))


@settings(max_examples=25)
@given(tuples)
def test_right_essential_is_left_essential_of_the_adjoint_tuple(t):
    engine = PerturbationEngine('WARNING')
    assert is_equal(engine.intersection_spectrum(t, SpectrumKind.RE).result,
                    engine.intersection_spectrum(t.reversed_dual(), SpectrumKind.LE).result)

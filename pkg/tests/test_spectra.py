from hypothesis import given, settings
import pytest

from opMatrix.regions import combine, is_equal, is_subset
from opMatrix.spectra import SpectrumKind, selects, spectrum

from .strategies import fredholm_data, models

INCLUSIONS = [
    (SpectrumKind.LE, SpectrumKind.E),
    (SpectrumKind.RE, SpectrumKind.E),
    (SpectrumKind.LE, SpectrumKind.LW),
    (SpectrumKind.RE, SpectrumKind.RW),
    (SpectrumKind.LW, SpectrumKind.L),
    (SpectrumKind.RW, SpectrumKind.R),
    (SpectrumKind.E, SpectrumKind.W),
    (SpectrumKind.W, SpectrumKind.FULL),
    (SpectrumKind.L, SpectrumKind.FULL),
]


@given(fredholm_data)
def test_pointwise_inclusions(data):
    for smaller, larger in INCLUSIONS:
        if selects(smaller, data):
            assert selects(larger, data)


@given(fredholm_data)
def test_dual_swaps_left_and_right(data):
    adjoint = data.dual()
    for left, right in [(SpectrumKind.LE, SpectrumKind.RE), (SpectrumKind.LW, SpectrumKind.RW),
                        (SpectrumKind.L, SpectrumKind.R)]:
        assert selects(left, data) == selects(right, adjoint)
    assert selects(SpectrumKind.E, data) == selects(SpectrumKind.E, adjoint)


@settings(max_examples=30, deadline=None)
@given(models)
def test_spectrum_inclusions_as_regions(model):
    for smaller, larger in INCLUSIONS:
        assert is_subset(spectrum(model, smaller), spectrum(model, larger))


@settings(max_examples=30, deadline=None)
@given(models)
def test_essential_and_weyl_split_into_sides(model):
    assert is_equal(spectrum(model, SpectrumKind.E),
                    combine('union', [spectrum(model, SpectrumKind.LE), spectrum(model, SpectrumKind.RE)]))
    assert is_equal(spectrum(model, SpectrumKind.W),
                    combine('union', [spectrum(model, SpectrumKind.LW), spectrum(model, SpectrumKind.RW)]))


@pytest.mark.parametrize("text, kind", [('le', SpectrumKind.LE), ('Full', SpectrumKind.FULL), ('W', SpectrumKind.W)])
def test_parse_kind(text, kind):
    assert SpectrumKind.parse(text) is kind


def test_unknown_kind():
    with pytest.raises(ValueError):
        SpectrumKind.parse('spectral')

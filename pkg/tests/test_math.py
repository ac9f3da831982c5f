from fractions import Fraction

from hypothesis import given
import pytest

from opMatrix.linalg import exact_rank, nullspace
from opMatrix.utils.math import RationalComplex, QuadraticSurd, compare_surds, to_fraction

from .strategies import complexes


@pytest.mark.parametrize("text, expected", [
    ('3', RationalComplex(3)),
    ('i', RationalComplex(0, 1)),
    ('-i', RationalComplex(0, -1)),
    ('1/2i', RationalComplex(0, Fraction(1, 2))),
    ('1+2i', RationalComplex(1, 2)),
    ('3/5-4/5i', RationalComplex(Fraction(3, 5), Fraction(-4, 5))),
    ('-1/2+i', RationalComplex(Fraction(-1, 2), 1)),
])
def test_parse_complex(text, expected):
    assert RationalComplex.parse(text) == expected


@pytest.mark.parametrize("value, text", [
    (RationalComplex(3), '3'),
    (RationalComplex(0, 1), 'i'),
    (RationalComplex(0, -1), '-i'),
    (RationalComplex(0, Fraction(1, 2)), '1/2i'),
    (RationalComplex(1, 2), '1+2i'),
])
def test_complex_text(value, text):
    assert str(value) == text


@given(complexes)
def test_complex_text_parses_back(value):
    assert RationalComplex.parse(str(value)) == value


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_arithmetic_stays_exact():
    a = RationalComplex(Fraction(3, 5), Fraction(4, 5))
    assert a * a.conjugate() == RationalComplex(1)
    assert a.modulus() == 1
    assert RationalComplex(1, 1).modulus() is None
    assert (RationalComplex(1, 1) / RationalComplex(0, 1)) == RationalComplex(1, -1)


def test_surd_comparison():
    root_two = QuadraticSurd.sqrt_of(Fraction(2))
    assert compare_surds(root_two, QuadraticSurd.make(Fraction(7, 5))) > 0
    assert compare_surds(root_two, QuadraticSurd.make(Fraction(3, 2))) < 0
    assert compare_surds(root_two * root_two, QuadraticSurd.make(Fraction(2))) == 0


def test_exact_rank_and_nullspace():
    matrix = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert exact_rank(matrix) == 2
    basis = nullspace(matrix)
    assert len(basis) == 1
    _, vector = basis[0]
    for row in matrix:
        total = RationalComplex(0)
        for entry, v in zip(row, vector):
            total = total + RationalComplex.coerce(entry) * v
        assert not total


def test_rank_over_gaussian_rationals():
    i = RationalComplex(0, 1)
    assert exact_rank([[1, i], [i, -1]]) == 1
    assert exact_rank([[1, i], [-i, 1]]) == 1
    assert exact_rank([[1, i], [i, 1]]) == 2

from fractions import Fraction

from hypothesis import strategies as st

from opMatrix.counts import ExtendedCount, FredholmData, INF
from opMatrix.models import (
    UnilateralShift, BackwardShift, BilateralShift, Identity, Zero, DiagonalOp,
    FiniteMatrix, Translate, Scale, DirectSum, Dual,
)
from opMatrix.regions import Point, Circle, OpenDisk, ClosedDisk, combine
from opMatrix.utils.math import RationalComplex
from perturbation.engine import DiagonalTuple

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
complexes = st.builds(RationalComplex, rationals, rationals)

# centres on a coarse grid keep arrangements small
centers = st.builds(RationalComplex,
                    st.sampled_from([Fraction(k, 2) for k in range(-4, 5)]),
                    st.sampled_from([Fraction(k, 2) for k in range(-4, 5)]))
radii = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])

primitives = st.one_of(
    st.builds(Point, centers),
    st.builds(Circle, centers, radii),
    st.builds(OpenDisk, centers, radii),
    st.builds(ClosedDisk, centers, radii),
)


def _compound(children):
    return st.one_of(
        st.builds(lambda a, b: combine('union', [a, b]), children, children),
        st.builds(lambda a, b: combine('intersection', [a, b]), children, children),
        st.builds(lambda a, b: combine('difference', [a, b]), children, children),
        st.builds(lambda a: combine('complement', [a]), children),
    )


regions = st.recursive(primitives, _compound, max_leaves=6)

counts = st.one_of(st.integers(min_value=0, max_value=4).map(ExtendedCount), st.just(INF))
fredholm_data = st.one_of(
    st.builds(FredholmData.closed, counts, counts),
    st.builds(FredholmData.non_closed, counts, counts),
)

base_models = st.sampled_from([
    UnilateralShift(),
    BackwardShift(),
    UnilateralShift(INF),
    BackwardShift(2),
    BilateralShift(),
    Identity(),
    Zero(),
    DiagonalOp(((0, 'inf'), (Fraction(1, 2), 2))),
    FiniteMatrix(((0, -1), (1, 0))),
    FiniteMatrix(((1, 1), (0, 1))),
])
shifts = st.sampled_from([RationalComplex(0), RationalComplex(1), RationalComplex(Fraction(1, 2), 1),
                          RationalComplex(-1, -1)])
factors = st.sampled_from([RationalComplex(2), RationalComplex(Fraction(1, 2)), RationalComplex(-1),
                           RationalComplex(0, 1), RationalComplex(Fraction(3, 5), Fraction(4, 5))])

models = st.recursive(
    base_models,
    lambda children: st.one_of(
        st.builds(Translate, children, shifts),
        st.builds(Scale, children, factors),
        st.builds(Dual, children),
        st.builds(DirectSum, children, children),
    ),
    max_leaves=2,
)

sample_points = [RationalComplex.parse(text) for text in
                 ('0', '1', '-1', '2', '1/2', 'i', '3/5+4/5i', '1/2+i', '-2i', '3+3i')]

tuples = st.lists(models, min_size=2, max_size=4).map(lambda entries: DiagonalTuple(tuple(entries)))

entries = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def upper_triangular(draw):
    # triangular entries keep every eigenvalue rational
    n = draw(st.integers(min_value=1, max_value=6))
    return tuple(tuple(draw(entries) if j >= i else Fraction(0) for j in range(n)) for i in range(n))


finite_tuples = st.lists(upper_triangular().map(FiniteMatrix), min_size=2, max_size=3).map(
    lambda entries: DiagonalTuple(tuple(entries)))


@st.composite
def finite_completions(draw):
    """A tuple of triangular blocks and one upper triangular matrix completing it."""
    t = draw(finite_tuples)
    sizes = [model.size for model in t.models]
    offsets = [sum(sizes[:k]) for k in range(len(sizes))]
    n = sum(sizes)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k, model in enumerate(t.models):
        for i in range(sizes[k]):
            for j in range(sizes[k]):
                rows[offsets[k] + i][offsets[k] + j] = model.entries[i][j]
            for j in range(offsets[k] + sizes[k], n):
                rows[offsets[k] + i][j] = draw(entries)
    return t, FiniteMatrix(tuple(tuple(row) for row in rows))

"""Catalog of operator models with exactly known Fredholm profiles.

Every model is an immutable description of a bounded operator on l^2(N)
(or on C^d when finite dimensional). A model can report, for any rational
λ, the Fredholm data of D - λ; it can also list matrix columns and rows in
the standard basis, describe the kernel of D - λ symbolically and produce
its Banach-space adjoint (the transpose in the standard basis).
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
import logging

import sympy as sp

from .counts import ExtendedCount, FredholmData, SpaceModel, INF, ZERO, ONE
from .errors import ModelError, TruncationError
from .linalg import exact_rank, nullspace
from .regions import (
    Point, Circle, OpenDisk, ClosedDisk, combine, union_of, common_refinement,
    contains, translate as translate_region, scale as scale_region,
)
from .utils.math import RationalComplex, Fraction, C_ZERO, C_ONE, modulus_bound
from .vectors import SymbolicVector, OrbitFamily, KernelDescription, EMPTY_KERNEL

logger = logging.getLogger(__name__)

UNIT_DISK = OpenDisk(0, 1)
UNIT_CIRCLE = Circle(0, 1)
UNIT_EXTERIOR = combine('complement', [ClosedDisk(0, 1)])


@dataclass(frozen=True)
class FredholmProfile:
    """Finite partition of C into regions, each with constant Fredholm data."""
    parts: tuple

    def data_at(self, lam):
        lam = RationalComplex.coerce(lam)
        for region, data in self.parts:
            if contains(region, lam):
                return data
        raise ModelError(f"profile does not cover {lam}")

    def regions(self):
        return [region for region, _ in self.parts]

    def to_json(self):
        return [{"region": region.to_json(), "data": data.to_json()} for region, data in self.parts]


@lru_cache(maxsize=None)
def _profile_of(model):
    return FredholmProfile(tuple(model._build_profile()))


def _point_profile(multiplicities):
    """Profile of an operator whose only non-invertible points are eigenvalues with (g, g) data."""
    parts = []
    points = []
    for value, mult in multiplicities:
        point = Point(value)
        points.append(point)
        parts.append((point, FredholmData.closed(mult, mult)))
    parts.append((combine('complement', [union_of(points)]), FredholmData.closed(0, 0)))
    return parts


class OperatorModel:
    """Common behaviour of catalog models."""

    @property
    def dim(self):
        raise NotImplementedError

    @property
    def bandwidth(self):
        """Largest row-minus-column offset of a non-zero entry, None when unbounded."""
        raise NotImplementedError

    def profile(self):
        return _profile_of(self)

    def _build_profile(self):
        raise NotImplementedError

    def data_at(self, lam):
        return self.profile().data_at(lam)

    def dual(self):
        raise NotImplementedError

    def column(self, j):
        raise NotImplementedError

    def row(self, i):
        raise NotImplementedError

    def kernel(self, lam):
        raise NotImplementedError

    def expression(self):
        raise NotImplementedError

    def spectrum_bound(self):
        """Rational R with every spectrum of the model inside the closed disk |λ| <= R."""
        raise NotImplementedError

    def rows_needed(self, cols):
        """Smallest row count that holds every non-zero entry of the first ``cols`` columns."""
        needed = 0
        for j in range(cols):
            for i, _ in self.column(j):
                needed = max(needed, i + 1)
        return needed

    def __str__(self):
        return self.expression()


def _coerce_count(value):
    try:
        return ExtendedCount.coerce(value)
    except (TypeError, ValueError) as e:
        raise ModelError(f"invalid multiplicity {value!r}: {e}")


def _count_text(count):
    return 'inf' if count.is_infinite else str(count.value)


@dataclass(frozen=True)
class FiniteMatrix(OperatorModel):
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(RationalComplex.coerce(v) for v in row) for row in self.entries)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise ModelError("a finite matrix model must be square and non-empty")
        object.__setattr__(self, 'entries', rows)

    @property
    def size(self):
        return len(self.entries)

    @property
    def dim(self):
        return ExtendedCount(self.size)

    @property
    def bandwidth(self):
        return self.size

    def _shifted(self, lam):
        lam = RationalComplex.coerce(lam)
        return [[v - lam if i == j else v for j, v in enumerate(row)] for i, row in enumerate(self.entries)]

    @cached_property
    def eigenvalues(self):
        """Distinct eigenvalues; each must lie in Q(i)."""
        x = sp.Symbol('x')
        matrix = sp.Matrix(self.size, self.size, lambda i, j: _to_sympy(self.entries[i][j]))
        poly = matrix.charpoly(x).as_expr()
        _, factors = sp.factor_list(poly, x, extension=sp.I)
        roots = []
        for factor, _ in factors:
            factor_poly = sp.Poly(factor, x)
            if factor_poly.degree() == 0:
                continue
            if factor_poly.degree() != 1:
                raise ModelError(f"eigenvalues of {self.expression()} leave Q(i): factor {factor}")
            lead, const = factor_poly.all_coeffs()
            roots.append(_from_sympy(sp.expand(-const / lead)))
        logger.debug(f"Eigenvalues of {self.expression()}: {[str(r) for r in roots]}")
        return tuple(sorted(set(roots)))

    def _build_profile(self):
        multiplicities = [(e, self.size - exact_rank(self._shifted(e))) for e in self.eigenvalues]
        return _point_profile(multiplicities)

    def dual(self):
        return FiniteMatrix(tuple(zip(*self.entries)))

    def column(self, j):
        if not 0 <= j < self.size:
            return []
        return [(i, row[j]) for i, row in enumerate(self.entries) if row[j]]

    def row(self, i):
        if not 0 <= i < self.size:
            return []
        return [(j, v) for j, v in enumerate(self.entries[i]) if v]

    def kernel(self, lam):
        basis = nullspace(self._shifted(lam))
        vectors = tuple(SymbolicVector.finite(dict(enumerate(vector))) for _, vector in basis)
        return KernelDescription(vectors, tuple(col for col, _ in basis))

    def expression(self):
        return 'matrix[' + ';'.join(','.join(str(v) for v in row) for row in self.entries) + ']'

    def spectrum_bound(self):
        return max(sum((modulus_bound(v) for v in row), Fraction(0)) for row in self.entries)


def _to_sympy(value):
    return (sp.Rational(value.re.numerator, value.re.denominator)
            + sp.I * sp.Rational(value.im.numerator, value.im.denominator))


def _from_sympy(expr):
    re_part, im_part = sp.re(expr), sp.im(expr)
    if not (re_part.is_Rational and im_part.is_Rational):
        raise ModelError(f"eigenvalue {expr} is not a Gaussian rational")
    return RationalComplex(Fraction(int(re_part.p), int(re_part.q)),
                           Fraction(int(im_part.p), int(im_part.q)))


class _Diagonal(OperatorModel):
    """Diagonal operator: finite-multiplicity values occupy consecutive blocks first,
    infinite-multiplicity values are interleaved round-robin after them."""

    def values(self):
        raise NotImplementedError

    @cached_property
    def _layout(self):
        blocks, offset = [], 0
        for value, mult in self.values():
            if mult.is_finite and mult.value > 0:
                blocks.append((offset, mult.value, value))
                offset += mult.value
        infinite = [value for value, mult in self.values() if mult.is_infinite]
        return tuple(blocks), offset, tuple(infinite)

    @property
    def dim(self):
        _, offset, infinite = self._layout
        return INF if infinite else ExtendedCount(offset)

    @property
    def bandwidth(self):
        return 0

    def value_at(self, index):
        blocks, offset, infinite = self._layout
        if index < offset:
            for start, mult, value in blocks:
                if start <= index < start + mult:
                    return value
        if not infinite:
            return None
        return infinite[(index - offset) % len(infinite)]

    def _build_profile(self):
        return _point_profile([(value, mult) for value, mult in self.values() if mult])

    def dual(self):
        return self

    def column(self, j):
        value = self.value_at(j)
        return [(j, value)] if value else []

    row = column

    def kernel(self, lam):
        lam = RationalComplex.coerce(lam)
        blocks, offset, infinite = self._layout
        vectors, pivots = [], []
        for start, mult, value in blocks:
            if value == lam:
                vectors.extend(SymbolicVector.basis(i) for i in range(start, start + mult))
                pivots.extend(range(start, start + mult))
        family = None
        if lam in infinite:
            family = OrbitFamily(offset + infinite.index(lam), len(infinite))
        return KernelDescription(tuple(vectors), tuple(pivots), family)

    def spectrum_bound(self):
        return max((modulus_bound(value) for value, mult in self.values() if mult), default=Fraction(0))


@dataclass(frozen=True)
class DiagonalOp(_Diagonal):
    entries: tuple

    def __post_init__(self):
        merged = {}
        for value, mult in self.entries:
            value, mult = RationalComplex.coerce(value), _coerce_count(mult)
            if value in merged and merged[value] != mult:
                raise ModelError(f"conflicting multiplicities for diagonal value {value}")
            merged[value] = mult
        if not any(merged.values()):
            raise ModelError("a diagonal model needs at least one value of positive multiplicity")
        ordered = []
        for value, mult in self.entries:
            value = RationalComplex.coerce(value)
            if value in merged:
                ordered.append((value, merged.pop(value)))
        object.__setattr__(self, 'entries', tuple(ordered))

    def values(self):
        return self.entries

    def expression(self):
        return 'diag{' + ','.join(f"({v},{_count_text(m)})" for v, m in self.entries) + '}'


@dataclass(frozen=True)
class Identity(_Diagonal):
    size: ExtendedCount = INF

    def __post_init__(self):
        object.__setattr__(self, 'size', _coerce_count(self.size))
        if not self.size:
            raise ModelError("identity on the zero space")

    def values(self):
        return ((C_ONE, self.size),)

    def expression(self):
        return f"identity({_count_text(self.size)})"


@dataclass(frozen=True)
class Zero(_Diagonal):
    size: ExtendedCount = INF

    def __post_init__(self):
        object.__setattr__(self, 'size', _coerce_count(self.size))
        if not self.size:
            raise ModelError("zero operator on the zero space")

    def values(self):
        return ((C_ZERO, self.size),)

    def expression(self):
        return f"zero({_count_text(self.size)})"


def _shift_multiplicity(model):
    mult = _coerce_count(model.multiplicity)
    if not mult:
        raise ModelError("shift multiplicity must be at least 1")
    object.__setattr__(model, 'multiplicity', mult)


@dataclass(frozen=True)
class UnilateralShift(OperatorModel):
    """S ⊗ I_m: e_j -> e_{j+m}; for m = ∞ the isometry e_j -> e_{2j+1}."""
    multiplicity: ExtendedCount = ONE

    def __post_init__(self):
        _shift_multiplicity(self)

    @property
    def dim(self):
        return INF

    @property
    def bandwidth(self):
        return self.multiplicity.value

    def _build_profile(self):
        m = self.multiplicity
        return [
            (UNIT_DISK, FredholmData.closed(0, m)),
            (UNIT_CIRCLE, FredholmData.non_closed(0, 0)),
            (UNIT_EXTERIOR, FredholmData.closed(0, 0)),
        ]

    def dual(self):
        return BackwardShift(self.multiplicity)

    def column(self, j):
        if self.multiplicity.is_infinite:
            return [(2 * j + 1, C_ONE)]
        return [(j + self.multiplicity.value, C_ONE)]

    def row(self, i):
        if self.multiplicity.is_infinite:
            return [((i - 1) // 2, C_ONE)] if i % 2 == 1 else []
        m = self.multiplicity.value
        return [(i - m, C_ONE)] if i >= m else []

    def kernel(self, lam):
        return EMPTY_KERNEL

    def expression(self):
        return 'shift' if self.multiplicity == ONE else f"shift({_count_text(self.multiplicity)})"

    def spectrum_bound(self):
        return Fraction(1)


@dataclass(frozen=True)
class BackwardShift(OperatorModel):
    """S* ⊗ I_m: e_j -> e_{j-m}; for m = ∞, e_{2j+1} -> e_j and e_{2j} -> 0."""
    multiplicity: ExtendedCount = ONE

    def __post_init__(self):
        _shift_multiplicity(self)

    @property
    def dim(self):
        return INF

    @property
    def bandwidth(self):
        return 0

    def _build_profile(self):
        m = self.multiplicity
        return [
            (UNIT_DISK, FredholmData.closed(m, 0)),
            (UNIT_CIRCLE, FredholmData.non_closed(0, 0)),
            (UNIT_EXTERIOR, FredholmData.closed(0, 0)),
        ]

    def dual(self):
        return UnilateralShift(self.multiplicity)

    def column(self, j):
        if self.multiplicity.is_infinite:
            return [((j - 1) // 2, C_ONE)] if j % 2 == 1 else []
        m = self.multiplicity.value
        return [(j - m, C_ONE)] if j >= m else []

    def row(self, i):
        if self.multiplicity.is_infinite:
            return [(2 * i + 1, C_ONE)]
        return [(i + self.multiplicity.value, C_ONE)]

    def kernel(self, lam):
        lam = RationalComplex.coerce(lam)
        if lam.abs2() >= 1:
            return EMPTY_KERNEL
        if self.multiplicity.is_infinite:
            return KernelDescription(family=OrbitFamily(0, 2, lam, slope=2, step=1))
        m = self.multiplicity.value
        vectors = tuple(SymbolicVector.geometric(lam, start=i, step=m) for i in range(m))
        return KernelDescription(vectors, tuple(range(m)))

    def expression(self):
        return 'backshift' if self.multiplicity == ONE else f"backshift({_count_text(self.multiplicity)})"

    def spectrum_bound(self):
        return Fraction(1)


def _fold(n):
    return 2 * n if n >= 0 else -2 * n - 1


def _unfold(index):
    return index // 2 if index % 2 == 0 else -(index + 1) // 2


@dataclass(frozen=True)
class BilateralShift(OperatorModel):
    """Bilateral shift on l^2(Z), folded onto N by n -> 2n (n >= 0), n -> 2|n| - 1 (n < 0)."""
    forward: bool = True

    @property
    def dim(self):
        return INF

    @property
    def bandwidth(self):
        return 2

    def _build_profile(self):
        return [
            (UNIT_CIRCLE, FredholmData.non_closed(0, 0)),
            (combine('complement', [UNIT_CIRCLE]), FredholmData.closed(0, 0)),
        ]

    def dual(self):
        return BilateralShift(not self.forward)

    def _step(self):
        return 1 if self.forward else -1

    def column(self, j):
        return [(_fold(_unfold(j) + self._step()), C_ONE)]

    def row(self, i):
        return [(_fold(_unfold(i) - self._step()), C_ONE)]

    def kernel(self, lam):
        return EMPTY_KERNEL

    def expression(self):
        return 'bishift' if self.forward else 'dual(bishift)'

    def spectrum_bound(self):
        return Fraction(1)


@dataclass(frozen=True)
class Translate(OperatorModel):
    """model + μ I."""
    model: OperatorModel
    mu: RationalComplex

    def __post_init__(self):
        object.__setattr__(self, 'mu', RationalComplex.coerce(self.mu))

    @property
    def dim(self):
        return self.model.dim

    @property
    def bandwidth(self):
        return self.model.bandwidth

    def _build_profile(self):
        return [(translate_region(region, self.mu), data) for region, data in self.model.profile().parts]

    def dual(self):
        return Translate(self.model.dual(), self.mu)

    def column(self, j):
        return _add_diagonal(self.model.column(j), j, self.mu)

    def row(self, i):
        return _add_diagonal(self.model.row(i), i, self.mu)

    def kernel(self, lam):
        return self.model.kernel(RationalComplex.coerce(lam) - self.mu)

    def expression(self):
        return f"translate({self.model.expression()}, {self.mu})"

    def spectrum_bound(self):
        return self.model.spectrum_bound() + modulus_bound(self.mu)


def _add_diagonal(entries, index, value):
    if not value:
        return list(entries)
    merged = dict(entries)
    merged[index] = merged.get(index, C_ZERO) + value
    return sorted((i, v) for i, v in merged.items() if v)


@dataclass(frozen=True)
class Scale(OperatorModel):
    """c · model, for c with rational modulus."""
    model: OperatorModel
    c: RationalComplex

    def __post_init__(self):
        c = RationalComplex.coerce(self.c)
        if not c:
            raise ModelError("scale factor must be non-zero")
        if c.modulus() is None:
            raise ModelError(f"|{c}| is irrational; scaled spectra would leave the rational catalog")
        object.__setattr__(self, 'c', c)

    @property
    def dim(self):
        return self.model.dim

    @property
    def bandwidth(self):
        return self.model.bandwidth

    def _build_profile(self):
        return [(scale_region(region, self.c), data) for region, data in self.model.profile().parts]

    def dual(self):
        return Scale(self.model.dual(), self.c)

    def column(self, j):
        return [(i, v * self.c) for i, v in self.model.column(j)]

    def row(self, i):
        return [(j, v * self.c) for j, v in self.model.row(i)]

    def kernel(self, lam):
        return self.model.kernel(RationalComplex.coerce(lam) / self.c)

    def expression(self):
        return f"scale({self.model.expression()}, {self.c})"

    def spectrum_bound(self):
        return self.model.spectrum_bound() * self.c.modulus()


@dataclass(frozen=True)
class DirectSum(OperatorModel):
    """first ⊕ second, interleaved when both are infinite dimensional, finite part first otherwise."""
    first: OperatorModel
    second: OperatorModel

    @property
    def dim(self):
        return self.first.dim + self.second.dim

    @cached_property
    def maps(self):
        """Index maps (p, s): local i -> global p i + s for each summand."""
        d1, d2 = self.first.dim, self.second.dim
        if d1.is_infinite and d2.is_infinite:
            return (2, 0), (2, 1)
        if d1.is_finite:
            return (1, 0), (1, d1.value)
        return (1, d2.value), (1, 0)

    def _locate(self, index):
        d1, d2 = self.first.dim, self.second.dim
        if d1.is_infinite and d2.is_infinite:
            return index % 2, index // 2
        if d1.is_finite:
            return (0, index) if index < d1.value else (1, index - d1.value)
        return (1, index) if index < d2.value else (0, index - d2.value)

    @property
    def bandwidth(self):
        b1, b2 = self.first.bandwidth, self.second.bandwidth
        if b1 is None or b2 is None:
            return None
        if self.first.dim.is_infinite and self.second.dim.is_infinite:
            return 2 * max(b1, b2)
        return max(b1, b2)

    def _parts(self):
        return (self.first, self.second)

    def _build_profile(self):
        p1, p2 = self.first.profile().parts, self.second.profile().parts
        refined = common_refinement([[r for r, _ in p1], [r for r, _ in p2]])
        return [(region, p1[i][1] + p2[j][1]) for (i, j), region in refined]

    def dual(self):
        return DirectSum(self.first.dual(), self.second.dual())

    def column(self, j):
        if self.dim.is_finite and j >= self.dim.value:
            return []
        which, local = self._locate(j)
        (p, s) = self.maps[which]
        return [(p * i + s, v) for i, v in self._parts()[which].column(local)]

    def row(self, i):
        if self.dim.is_finite and i >= self.dim.value:
            return []
        which, local = self._locate(i)
        (p, s) = self.maps[which]
        return [(p * j + s, v) for j, v in self._parts()[which].row(local)]

    def kernel(self, lam):
        k1 = self.first.kernel(lam).reindex(*self.maps[0])
        k2 = self.second.kernel(lam).reindex(*self.maps[1])
        return k1.merge(k2)

    def expression(self):
        return f"sum({self.first.expression()}, {self.second.expression()})"

    def spectrum_bound(self):
        return max(self.first.spectrum_bound(), self.second.spectrum_bound())


@dataclass(frozen=True)
class Dual(OperatorModel):
    """Adjoint of a model; its profile follows from the model's by the duality rule."""
    model: OperatorModel

    @property
    def dim(self):
        return self.model.dim

    @property
    def bandwidth(self):
        return self.model.dual().bandwidth

    def _build_profile(self):
        return [(region, data.dual()) for region, data in self.model.profile().parts]

    def dual(self):
        return self.model

    def column(self, j):
        return self.model.dual().column(j)

    def row(self, i):
        return self.model.dual().row(i)

    def kernel(self, lam):
        return self.model.dual().kernel(lam)

    def expression(self):
        return f"dual({self.model.expression()})"

    def spectrum_bound(self):
        return self.model.spectrum_bound()


def fredholm_profile(model):
    return model.profile()


def dual(model):
    return model.dual()


def kernel_basis(model, lam):
    """Symbolic kernel generators of model - λ."""
    return model.kernel(lam)


@dataclass(frozen=True)
class SlotDescription:
    """Cokernel slots of model - λ.

    Slot p pairs the functional φ_p (a kernel generator of the adjoint) with
    the basis vector e_{w_p}, w_p the functional's pivot, so φ_q(e_{w_p}) = δ_pq.
    """
    functionals: KernelDescription = field(default_factory=KernelDescription)

    @property
    def count(self):
        return self.functionals.count

    @property
    def finite_count(self):
        return self.functionals.finite_count

    @property
    def infinite(self):
        return self.functionals.infinite

    def slot(self, position):
        return self.functionals.pivot(position)

    def functional(self, position):
        return self.functionals.generator(position)

    def to_json(self, preview=4):
        return self.functionals.to_json(preview)


def cokernel_slots(model, lam):
    return SlotDescription(model.dual().kernel(lam))


def space_data(model, lam):
    data = model.data_at(lam)
    return SpaceModel(data.alpha), SpaceModel(data.beta)


def rect_truncation(model, rows, cols):
    """Top-left rows × cols section of the model's matrix."""
    if rows < 0 or cols < 0:
        raise TruncationError("section sizes must be non-negative")
    if model.dim.is_finite and (cols > model.dim.value or rows > model.dim.value):
        raise TruncationError(f"{model.expression()} has only {model.dim.value} rows and columns")
    needed = model.rows_needed(cols)
    if rows < needed:
        raise TruncationError(f"{cols} columns of {model.expression()} need at least {needed} rows, got {rows}")
    matrix = [[C_ZERO] * cols for _ in range(rows)]
    for j in range(cols):
        for i, value in model.column(j):
            matrix[i][j] = value
    return matrix

"""Regions of the complex plane built from rational circles, disks and points.

A region is an expression tree. Primitives carry one boundary each (a circle
or a point); unions, intersections, complements and differences combine them.
Questions about a region (emptiness, equality, its canonical text) are
answered on the exact arrangement of its boundaries.
"""
from dataclasses import dataclass
from functools import reduce
import logging

import numpy as np

from .arrangement import (
    CircleBoundary, PointBoundary, SurdPoint, build_arrangement, INSIDE, ON, OUTSIDE,
)
from .errors import RegionError
from .utils.math import RationalComplex, Fraction, ZERO, ratio_str, parse_fraction, short_str

logger = logging.getLogger(__name__)

LAMBDA = 'λ'


class Region:
    """Base class of region expressions."""

    def boundary(self):
        return None

    def primitives(self):
        raise NotImplementedError

    def holds(self, sides):
        """Membership given the side of every boundary at a point."""
        raise NotImplementedError

    def mask(self, sides):
        """Vectorised membership given numpy arrays of sides."""
        raise NotImplementedError

    def map_primitives(self, fn):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def __or__(self, other):
        return combine('union', [self, other])

    def __and__(self, other):
        return combine('intersection', [self, other])

    def __sub__(self, other):
        return combine('difference', [self, other])

    def __invert__(self):
        return combine('complement', [self])


class Primitive(Region):
    def primitives(self):
        yield self

    def map_primitives(self, fn):
        return fn(self)


@dataclass(frozen=True)
class Point(Primitive):
    at: RationalComplex

    def __post_init__(self):
        object.__setattr__(self, 'at', RationalComplex.coerce(self.at))

    def boundary(self):
        return PointBoundary(self.at)

    def holds(self, sides):
        return sides[self.boundary()] == ON

    def mask(self, sides):
        return sides[self.boundary()] == ON

    def to_json(self):
        return {"op": "point", "at": self.at.to_json()}


@dataclass(frozen=True)
class _Round(Primitive):
    center: RationalComplex
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'center', RationalComplex.coerce(self.center))
        radius = self.radius
        if isinstance(radius, float):
            raise RegionError("radius must be an exact rational, not a float")
        if not isinstance(radius, Fraction):
            try:
                radius = parse_fraction(radius) if isinstance(radius, str) else Fraction(radius)
            except (TypeError, ValueError) as e:
                raise RegionError(f"radius must be an exact rational: {e}")
        if radius <= 0:
            raise RegionError(f"radius must be positive, got {radius}")
        object.__setattr__(self, 'radius', radius)

    def boundary(self):
        return CircleBoundary(self.center, self.radius)

    def to_json(self):
        return {"op": self.op, "center": self.center.to_json(), "radius": ratio_str(self.radius)}


@dataclass(frozen=True)
class Circle(_Round):
    op = 'circle'

    def holds(self, sides):
        return sides[self.boundary()] == ON

    def mask(self, sides):
        return sides[self.boundary()] == ON


@dataclass(frozen=True)
class OpenDisk(_Round):
    op = 'open_disk'

    def holds(self, sides):
        return sides[self.boundary()] == INSIDE

    def mask(self, sides):
        return sides[self.boundary()] == INSIDE


@dataclass(frozen=True)
class ClosedDisk(_Round):
    op = 'closed_disk'

    def holds(self, sides):
        return sides[self.boundary()] != OUTSIDE

    def mask(self, sides):
        return sides[self.boundary()] != OUTSIDE


@dataclass(frozen=True)
class FullPlane(Primitive):
    def holds(self, sides):
        return True

    def mask(self, sides):
        return np.ones(_mask_shape(sides), dtype=bool)

    def to_json(self):
        return {"op": "full"}


@dataclass(frozen=True)
class Empty(Primitive):
    def holds(self, sides):
        return False

    def mask(self, sides):
        return np.zeros(_mask_shape(sides), dtype=bool)

    def to_json(self):
        return {"op": "empty"}


class GridSides(dict):
    """Boundary -> numpy array of sides over a sampling grid of the given shape."""

    def __init__(self, shape):
        super().__init__()
        self.shape = shape


def _mask_shape(sides):
    return sides.shape


@dataclass(frozen=True)
class Union(Region):
    args: tuple

    def primitives(self):
        for arg in self.args:
            yield from arg.primitives()

    def holds(self, sides):
        return any(arg.holds(sides) for arg in self.args)

    def mask(self, sides):
        return reduce(np.logical_or, (arg.mask(sides) for arg in self.args))

    def map_primitives(self, fn):
        return combine('union', [arg.map_primitives(fn) for arg in self.args])

    def to_json(self):
        return {"op": "union", "args": [arg.to_json() for arg in self.args]}


@dataclass(frozen=True)
class Intersection(Region):
    args: tuple

    def primitives(self):
        for arg in self.args:
            yield from arg.primitives()

    def holds(self, sides):
        return all(arg.holds(sides) for arg in self.args)

    def mask(self, sides):
        return reduce(np.logical_and, (arg.mask(sides) for arg in self.args))

    def map_primitives(self, fn):
        return combine('intersection', [arg.map_primitives(fn) for arg in self.args])

    def to_json(self):
        return {"op": "intersection", "args": [arg.to_json() for arg in self.args]}


@dataclass(frozen=True)
class Complement(Region):
    arg: Region

    def primitives(self):
        yield from self.arg.primitives()

    def holds(self, sides):
        return not self.arg.holds(sides)

    def mask(self, sides):
        return np.logical_not(self.arg.mask(sides))

    def map_primitives(self, fn):
        return combine('complement', [self.arg.map_primitives(fn)])

    def to_json(self):
        return {"op": "complement", "args": [self.arg.to_json()]}


@dataclass(frozen=True)
class Difference(Region):
    left: Region
    right: Region

    def primitives(self):
        yield from self.left.primitives()
        yield from self.right.primitives()

    def holds(self, sides):
        return self.left.holds(sides) and not self.right.holds(sides)

    def mask(self, sides):
        return np.logical_and(self.left.mask(sides), np.logical_not(self.right.mask(sides)))

    def map_primitives(self, fn):
        return combine('difference', [self.left.map_primitives(fn), self.right.map_primitives(fn)])

    def to_json(self):
        return {"op": "difference", "args": [self.left.to_json(), self.right.to_json()]}


FULL = FullPlane()
EMPTY = Empty()


def combine(op, args):
    """Combine region expressions under union, intersection, complement or difference."""
    args = list(args)
    for arg in args:
        if not isinstance(arg, Region):
            raise RegionError(f"not a region: {arg!r}")
    if op == 'complement':
        if len(args) != 1:
            raise RegionError(f"complement takes exactly one argument, got {len(args)}")
        arg = args[0]
        if isinstance(arg, FullPlane):
            return EMPTY
        if isinstance(arg, Empty):
            return FULL
        return Complement(arg)
    if op == 'difference':
        if len(args) != 2:
            raise RegionError(f"difference takes exactly two arguments, got {len(args)}")
        left, right = args
        if isinstance(right, Empty) or isinstance(left, Empty):
            return left
        if isinstance(right, FullPlane):
            return EMPTY
        return Difference(left, right)
    if op == 'union':
        flat = []
        for arg in args:
            parts = arg.args if isinstance(arg, Union) else (arg,)
            for part in parts:
                if isinstance(part, FullPlane):
                    return FULL
                if not isinstance(part, Empty) and part not in flat:
                    flat.append(part)
        if not flat:
            return EMPTY
        return flat[0] if len(flat) == 1 else Union(tuple(flat))
    if op == 'intersection':
        flat = []
        for arg in args:
            parts = arg.args if isinstance(arg, Intersection) else (arg,)
            for part in parts:
                if isinstance(part, Empty):
                    return EMPTY
                if not isinstance(part, FullPlane) and part not in flat:
                    flat.append(part)
        if not flat:
            return FULL
        return flat[0] if len(flat) == 1 else Intersection(tuple(flat))
    raise RegionError(f"unknown region operation {op!r}")


def union_of(regions):
    return combine('union', list(regions))


def intersection_of(regions):
    return combine('intersection', list(regions))


class _PointSides(dict):
    """Side of each boundary at a fixed point, computed on demand."""

    def __init__(self, point):
        super().__init__()
        self.point = point

    def __missing__(self, boundary):
        value = boundary.side(self.point)
        self[boundary] = value
        return value


def contains(region, point):
    """Exact membership of a Gaussian rational (or surd) point."""
    if not isinstance(point, SurdPoint):
        point = RationalComplex.coerce(point)
    return region.holds(_PointSides(point))


def _arrangement(*regions):
    primitives = []
    for region in regions:
        primitives.extend(region.primitives())
    return build_arrangement(primitives)


def is_empty(region):
    return not any(region.holds(cell.sides) for cell in _arrangement(region).cells)


def is_equal(first, second):
    arrangement = _arrangement(first, second)
    return all(first.holds(cell.sides) == second.holds(cell.sides) for cell in arrangement.cells)


def is_subset(first, second):
    arrangement = _arrangement(first, second)
    return all(second.holds(cell.sides) for cell in arrangement.cells if first.holds(cell.sides))


def cell_count(primitives):
    """Number of cells (faces, arcs, vertices, isolated points) in the arrangement."""
    return build_arrangement(primitives).cell_count


def common_refinement(partitions):
    """Realised intersections of several partitions of the plane.

    Returns ``(indices, region)`` pairs in lexicographic order of the part
    indices, one per non-empty intersection.
    """
    primitives = []
    for partition in partitions:
        for region in partition:
            primitives.extend(region.primitives())
    arrangement = build_arrangement(primitives)
    realised = set()
    for cell in arrangement.cells:
        indices = []
        for partition in partitions:
            hits = [k for k, region in enumerate(partition) if region.holds(cell.sides)]
            if len(hits) != 1:
                raise RegionError(f"regions do not partition the plane at {cell.point}")
            indices.append(hits[0])
        realised.add(tuple(indices))
    return [(indices, intersection_of(partition[k] for partition, k in zip(partitions, indices)))
            for indices in sorted(realised)]


def translate(region, mu):
    """Image of the region under λ ↦ λ + μ."""
    mu = RationalComplex.coerce(mu)

    def shift(primitive):
        if isinstance(primitive, Point):
            return Point(primitive.at + mu)
        if isinstance(primitive, _Round):
            return type(primitive)(primitive.center + mu, primitive.radius)
        return primitive

    return region.map_primitives(shift)


def scale(region, c):
    """Image of the region under λ ↦ cλ; |c| must be a non-zero rational."""
    c = RationalComplex.coerce(c)
    modulus = c.modulus()
    if not c:
        raise RegionError("cannot scale a region by zero")
    if modulus is None:
        raise RegionError(f"|{c}| is irrational; scaled circles would leave the rational catalog")

    def stretch(primitive):
        if isinstance(primitive, Point):
            return Point(primitive.at * c)
        if isinstance(primitive, _Round):
            return type(primitive)(primitive.center * c, primitive.radius * modulus)
        return primitive

    return region.map_primitives(stretch)


_ROUND_OPS = {'circle': Circle, 'open_disk': OpenDisk, 'closed_disk': ClosedDisk}


def to_json(region):
    return region.to_json()


def from_json(data):
    op = data.get("op")
    if op in _ROUND_OPS:
        return _ROUND_OPS[op](RationalComplex.from_json(data["center"]), parse_fraction(data["radius"]))
    if op == "point":
        return Point(RationalComplex.from_json(data["at"]))
    if op == "full":
        return FULL
    if op == "empty":
        return EMPTY
    if op in ("union", "intersection", "complement", "difference"):
        return combine(op, [from_json(arg) for arg in data.get("args", [])])
    raise RegionError(f"unknown region node {op!r}")


# Canonical description

_CIRCLE_SYMBOLS = {
    frozenset({INSIDE}): '<',
    frozenset({ON}): '=',
    frozenset({OUTSIDE}): '>',
    frozenset({INSIDE, ON}): '≤',
    frozenset({ON, OUTSIDE}): '≥',
    frozenset({INSIDE, OUTSIDE}): '≠',
}


def _modulus_text(center):
    if not center:
        return f"|{LAMBDA}|"
    if center.is_real():
        if center.re > 0:
            return f"|{LAMBDA}−{short_str(center.re)}|"
        return f"|{LAMBDA}+{short_str(-center.re)}|"
    return f"|{LAMBDA}−({center})|"


def _constraint_text(boundary, values):
    if isinstance(boundary, CircleBoundary):
        return f"{_modulus_text(boundary.center)}{_CIRCLE_SYMBOLS[values]}{short_str(boundary.radius)}"
    if values == frozenset({ON}):
        return f"{LAMBDA}={boundary.point}"
    return f"{LAMBDA}≠{boundary.point}"


def _is_function(rows, keep):
    seen = {}
    for signature, _, _, inside in rows:
        key = tuple(signature[k] for k in keep)
        if seen.setdefault(key, inside) != inside:
            return False
    return True


def _matches(term, signature):
    return all(value in allowed for value, allowed in zip(signature, term))


def _term_key(term):
    return tuple(tuple(sorted(values)) for values in term)


def _merge_terms(terms):
    terms = sorted(terms, key=_term_key)
    merged = True
    while merged:
        merged = False
        for a in range(len(terms)):
            for b in range(a + 1, len(terms)):
                diff = [k for k in range(len(terms[a])) if terms[a][k] != terms[b][k]]
                if len(diff) != 1:
                    continue
                k = diff[0]
                joined = terms[a][:k] + (terms[a][k] | terms[b][k],) + terms[a][k + 1:]
                terms = sorted([t for i, t in enumerate(terms) if i not in (a, b)] + [joined],
                               key=_term_key)
                merged = True
                break
            if merged:
                break
    return terms


def describe(region):
    """Canonical, deterministic text for the set of points in the region."""
    arrangement = _arrangement(region)
    boundaries = arrangement.boundaries
    rows = [(cell.signature, cell.dimension, cell.point, region.holds(cell.sides))
            for cell in arrangement.cells]
    if not any(row[3] for row in rows):
        return '∅'
    if all(row[3] for row in rows):
        return 'ℂ'

    keep = list(range(len(boundaries)))
    for index in range(len(boundaries)):
        trial = [k for k in keep if k != index]
        if _is_function(rows, trial):
            keep = trial
    kept = [boundaries[k] for k in keep]
    projected = [(tuple(sig[k] for k in keep), dim, point, inside) for sig, dim, point, inside in rows]
    realised = {row[0] for row in projected}
    true_signatures = sorted({row[0] for row in projected if row[3]})

    terms = _merge_terms([tuple(frozenset({v}) for v in sig) for sig in true_signatures])
    widened = []
    for term in terms:
        covered = {s for s in realised if _matches(term, s)}
        for k, boundary in enumerate(kept):
            candidate = term[:k] + (frozenset(boundary.full_values()),) + term[k + 1:]
            if {s for s in realised if _matches(candidate, s)} == covered:
                term = candidate
        widened.append(term)

    rendered = []
    for term in widened:
        cells = [(dim, point) for sig, dim, point, _ in projected if _matches(term, sig)]
        dimension = max(dim for dim, _ in cells)
        if dimension == 0 and all(isinstance(point, RationalComplex) for _, point in cells):
            for point in sorted({point for _, point in cells}):
                rendered.append((0, f"{{{point}}}"))
            continue
        constraints = [
            _constraint_text(boundary, values)
            for boundary, values in zip(kept, term)
            if values != frozenset(boundary.full_values())
        ]
        rendered.append((dimension, '{' + ', '.join(constraints) + '}'))

    rendered = sorted(set(rendered), key=lambda item: (-item[0], item[1]))
    return ' ∪ '.join(text for _, text in rendered)

"""Exact arrangement of rational circles and points in the complex plane.

Every decision is made in rational or quadratic-surd arithmetic. The
arrangement yields one sample point for each realised sign vector of the
boundaries, tagged with the dimension of the cell it was drawn from, which is
enough to decide emptiness, equality and membership-based descriptions of any
region built from these boundaries.
"""
from dataclasses import dataclass, field
from functools import lru_cache
import logging

import networkx as nx

from .utils.math import (
    RationalComplex, QuadraticSurd, Fraction, ZERO, sgn,
    compare_surds, sort_surds, rational_between, rational_below, rational_above,
)

logger = logging.getLogger(__name__)

INSIDE, ON, OUTSIDE = -1, 0, 1
OFF = 1


@dataclass(frozen=True)
class CircleBoundary:
    center: RationalComplex
    radius: Fraction

    def sort_key(self):
        return (0, self.center.re, self.center.im, self.radius)

    def side(self, point):
        """-1 inside, 0 on, +1 outside."""
        if isinstance(point, SurdPoint):
            dx = point.x - self.center.re
            dy = point.y - self.center.im
            return (dx * dx + dy * dy - self.radius * self.radius).sign()
        dx = point.re - self.center.re
        dy = point.im - self.center.im
        return sgn(dx * dx + dy * dy - self.radius * self.radius)

    def at(self, t):
        """Rational point of the circle at stereographic parameter t (None is the point at t = ∞)."""
        if t is None:
            return RationalComplex(self.center.re - self.radius, self.center.im)
        denom = 1 + t * t
        return RationalComplex(self.center.re + self.radius * (1 - t * t) / denom,
                               self.center.im + self.radius * 2 * t / denom)

    def full_values(self):
        return (INSIDE, ON, OUTSIDE)


@dataclass(frozen=True)
class PointBoundary:
    point: RationalComplex

    def sort_key(self):
        return (1, self.point.re, self.point.im, ZERO)

    def side(self, point):
        """0 on the point, 1 off it."""
        if isinstance(point, SurdPoint):
            if not point.is_rational():
                return OFF
            point = point.as_rational()
        return ON if point == self.point else OFF

    def full_values(self):
        return (ON, OFF)


@dataclass(frozen=True)
class SurdPoint:
    """A point whose coordinates lie in Q(sqrt d) for one radicand d."""
    x: QuadraticSurd
    y: QuadraticSurd

    def is_rational(self):
        return self.x.is_rational() and self.y.is_rational()

    def as_rational(self):
        return RationalComplex(self.x.a, self.y.a)

    def approx(self):
        return (round(float(self.x), 9), round(float(self.y), 9))

    def same_as(self, other):
        return compare_surds(self.x, other.x) == 0 and compare_surds(self.y, other.y) == 0

    def __str__(self):
        return f"({self.x}, {self.y})"


def normalise_point(point):
    if isinstance(point, SurdPoint) and point.is_rational():
        return point.as_rational()
    return point


@dataclass
class Cell:
    point: object
    signature: tuple
    dimension: int
    sides: dict = field(default_factory=dict, repr=False)


@dataclass
class Arrangement:
    boundaries: tuple
    cells: list
    vertex_count: int
    edge_count: int
    face_count: int
    isolated_points: int

    @property
    def cell_count(self):
        return self.face_count + self.edge_count + self.vertex_count + self.isolated_points


def boundary_order(boundaries):
    return tuple(sorted(set(boundaries), key=lambda b: b.sort_key()))


def _circle_hits(circle, other):
    """Stereographic parameters on ``circle`` where it meets ``other``; None stands for t = ∞."""
    u = circle.center - other.center
    r = circle.radius
    k = u.abs2() + r * r - other.radius * other.radius
    a = k - 2 * r * u.re
    b = 4 * r * u.im
    c = k + 2 * r * u.re
    if a == 0 and b == 0 and c == 0:
        raise ValueError("coincident circles")
    if a == 0:
        hits = [None]
        if b != 0:
            hits.append(QuadraticSurd(-c / b))
        return hits
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [QuadraticSurd(-b / (2 * a))]
    root = QuadraticSurd.sqrt_of(disc)
    return [(root * -1 - b) / (2 * a), (root - b) / (2 * a)]


def _surd_point(circle, t):
    if t is None:
        return circle.at(None)
    denom = t * t + 1
    x = (t * t * -1 + 1) * circle.radius / denom + circle.center.re
    y = t * (2 * circle.radius) / denom + circle.center.im
    return normalise_point(SurdPoint(x, y))


def _point_parameter(circle, point):
    ex = (point.re - circle.center.re) / circle.radius
    ey = (point.im - circle.center.im) / circle.radius
    if ex == -1:
        return None
    return QuadraticSurd(ey / (1 + ex))


def _as_surd_point(point):
    if isinstance(point, SurdPoint):
        return point
    return SurdPoint(QuadraticSurd(point.re), QuadraticSurd(point.im))


class _VertexSet:
    """De-duplicates exact vertices; floats only prune which pairs get compared exactly."""

    def __init__(self):
        self.approx = []
        self.points = []

    def add(self, point):
        probe = _as_surd_point(point)
        px, py = probe.approx()
        for index, (qx, qy) in enumerate(self.approx):
            if abs(px - qx) < 1e-6 and abs(py - qy) < 1e-6:
                if _as_surd_point(self.points[index]).same_as(probe):
                    return index
        self.approx.append((px, py))
        self.points.append(point)
        return len(self.points) - 1


def _exact_sorted(values):
    ordered = sorted(values, key=float)
    unique = []
    for value in ordered:
        if unique:
            order = compare_surds(unique[-1], value)
            if order == 0:
                continue
            if order > 0:
                return sort_surds(values)
        unique.append(value)
    return unique


def _parameter_samples(params):
    """Rational parameters, one inside every arc cut out by ``params``."""
    finite = _exact_sorted([t for t in params if t is not None])
    if not finite:
        return [ZERO]
    samples = [rational_below(finite[0])]
    for left, right in zip(finite, finite[1:]):
        samples.append(rational_between(left, right))
    samples.append(rational_above(finite[-1]))
    return samples


def _line_samples(circles, x):
    crossings = []
    for circle in circles:
        dx = x - circle.center.re
        rest = circle.radius * circle.radius - dx * dx
        if rest > 0:
            root = QuadraticSurd.sqrt_of(rest)
            crossings.append(root + circle.center.im)
            crossings.append(root * -1 + circle.center.im)
    ys = _exact_sorted(crossings)
    if not ys:
        return [ZERO]
    samples = [rational_below(ys[0])]
    for low, high in zip(ys, ys[1:]):
        samples.append(rational_between(low, high))
    samples.append(rational_above(ys[-1]))
    return samples


@lru_cache(maxsize=256)
def arrange(boundaries):
    """Build the arrangement of an ordered tuple of boundaries."""
    circles = [b for b in boundaries if isinstance(b, CircleBoundary)]
    points = [b.point for b in boundaries if isinstance(b, PointBoundary)]

    vertices = _VertexSet()
    params = {index: [] for index in range(len(circles))}
    incidence = nx.Graph()
    incidence.add_nodes_from(range(len(circles)))
    for i, circle in enumerate(circles):
        for j, other in enumerate(circles):
            if i == j:
                continue
            for t in _circle_hits(circle, other):
                params[i].append(t)
                vertices.add(_surd_point(circle, t))
                incidence.add_edge(i, j)
    circle_vertex_count = len(vertices.points)

    isolated = 0
    for point in points:
        on_any = False
        for i, circle in enumerate(circles):
            if circle.side(point) == ON:
                on_any = True
                params[i].append(_point_parameter(circle, point))
        vertices.add(point)
        if not on_any:
            isolated += 1

    edge_count, dummies = 0, 0
    arc_params = {}
    for i in range(len(circles)):
        finite = _exact_sorted([t for t in params[i] if t is not None])
        has_infinity = any(t is None for t in params[i])
        distinct = len(finite) + (1 if has_infinity else 0)
        arc_params[i] = finite + ([None] if has_infinity else [])
        if distinct == 0:
            dummies += 1
        edge_count += max(distinct, 1)

    vertex_count = len(vertices.points) - isolated
    components = nx.number_connected_components(incidence) if circles else 0
    face_count = 1 + components + edge_count - vertex_count - dummies

    samples = []
    criticals = [circle.center.re - circle.radius for circle in circles]
    criticals += [circle.center.re + circle.radius for circle in circles]
    criticals += [QuadraticSurd(p.re) for p in points]
    criticals += [_as_surd_point(v).x for v in vertices.points[:circle_vertex_count]]
    criticals = _exact_sorted([QuadraticSurd(c) if not isinstance(c, QuadraticSurd) else c
                               for c in criticals])
    if criticals:
        xs = [rational_below(criticals[0])]
        xs += [rational_between(a, b) for a, b in zip(criticals, criticals[1:])]
        xs.append(rational_above(criticals[-1]))
    else:
        xs = [ZERO]
    for x in xs:
        for y in _line_samples(circles, x):
            samples.append((RationalComplex(x, y), 2))
    for i, circle in enumerate(circles):
        for t in _parameter_samples(arc_params[i]):
            samples.append((circle.at(t), 1))
    for vertex in vertices.points:
        samples.append((normalise_point(vertex), 0))

    cells, seen = [], set()
    for point, dimension in samples:
        signature = tuple(boundary.side(point) for boundary in boundaries)
        if (signature, dimension) in seen:
            continue
        seen.add((signature, dimension))
        cells.append(Cell(point, signature, dimension, dict(zip(boundaries, signature))))

    logger.debug(f"Arrangement of {len(boundaries)} boundaries: {len(cells)} sample cells, "
                 f"V={vertex_count} E={edge_count} F={face_count}")
    return Arrangement(boundaries, cells, vertex_count, edge_count, face_count, isolated)


def build_arrangement(primitives):
    """Arrangement of the boundaries carried by an iterable of region primitives."""
    boundaries = []
    for primitive in primitives:
        boundary = primitive.boundary()
        if boundary is not None:
            boundaries.append(boundary)
    return arrange(boundary_order(boundaries))

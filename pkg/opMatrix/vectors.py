"""Symbolic vectors of l^2(N) with finitely supported or geometric coefficients."""
from dataclasses import dataclass

from .counts import ExtendedCount, INF
from .errors import ModelError
from .utils.math import RationalComplex, C_ZERO, C_ONE


@dataclass(frozen=True)
class OrbitTerm:
    """coefficient * ratio**t placed at indices i_0 = start, i_{t+1} = slope * i_t + step."""
    start: int
    slope: int
    step: int
    coefficient: RationalComplex
    ratio: RationalComplex

    def __post_init__(self):
        if self.slope < 1 or self.slope * self.start + self.step <= self.start:
            raise ModelError("orbit indices must be strictly increasing")
        if not self.ratio or self.ratio.abs2() >= 1:
            raise ModelError("orbit ratio must satisfy 0 < |r| < 1 to stay square summable")

    def index_at(self, t):
        index = self.start
        for _ in range(t):
            index = self.slope * index + self.step
        return index

    def position(self, index):
        if index < self.start:
            return None
        if self.slope == 1:
            offset = index - self.start
            return offset // self.step if offset % self.step == 0 else None
        t, current = 0, self.start
        while current < index:
            current = self.slope * current + self.step
            t += 1
        return t if current == index else None

    def coeff(self, index):
        t = self.position(index)
        if t is None:
            return C_ZERO
        return self.coefficient * self.ratio ** t

    def indices_below(self, horizon):
        index = self.start
        while index < horizon:
            yield index
            index = self.slope * index + self.step

    def reindex(self, p, s):
        return OrbitTerm(p * self.start + s, self.slope, p * self.step + s - self.slope * s,
                         self.coefficient, self.ratio)

    def scaled(self, c):
        return OrbitTerm(self.start, self.slope, self.step, self.coefficient * c, self.ratio)

    def to_json(self):
        return {
            "start": self.start, "slope": self.slope, "step": self.step,
            "coefficient": self.coefficient.to_json(), "ratio": self.ratio.to_json(),
        }


@dataclass(frozen=True)
class SymbolicVector:
    entries: tuple = ()
    orbits: tuple = ()

    @classmethod
    def finite(cls, mapping):
        items = sorted((i, RationalComplex.coerce(v)) for i, v in mapping.items())
        return cls(tuple((i, v) for i, v in items if v))

    @classmethod
    def basis(cls, index):
        return cls(((index, C_ONE),))

    @classmethod
    def geometric(cls, ratio, start=0, slope=1, step=1, coefficient=C_ONE):
        """sum_t coefficient * ratio**t e_{i_t}; a zero ratio leaves only e_start."""
        ratio = RationalComplex.coerce(ratio)
        coefficient = RationalComplex.coerce(coefficient)
        if not ratio:
            return cls(((start, coefficient),))
        return cls((), (OrbitTerm(start, slope, step, coefficient, ratio),))

    @property
    def is_finitely_supported(self):
        return not self.orbits

    def coeff(self, index):
        value = C_ZERO
        for i, v in self.entries:
            if i == index:
                value = value + v
        for orbit in self.orbits:
            value = value + orbit.coeff(index)
        return value

    def support_below(self, horizon):
        indices = {i for i, _ in self.entries if i < horizon}
        for orbit in self.orbits:
            indices.update(orbit.indices_below(horizon))
        return sorted(indices)

    def head(self):
        """Largest finite index, or the first orbit index, whichever is larger."""
        marks = [i for i, _ in self.entries] + [orbit.start for orbit in self.orbits]
        return max(marks, default=0)

    def reindex(self, p, s):
        """Image under e_i -> e_{p i + s}."""
        return SymbolicVector(tuple((p * i + s, v) for i, v in self.entries),
                              tuple(orbit.reindex(p, s) for orbit in self.orbits))

    def scale(self, c):
        c = RationalComplex.coerce(c)
        if not c:
            return SymbolicVector()
        return SymbolicVector(tuple((i, v * c) for i, v in self.entries),
                              tuple(orbit.scaled(c) for orbit in self.orbits))

    def __add__(self, other):
        merged = dict(self.entries)
        for i, v in other.entries:
            merged[i] = merged.get(i, C_ZERO) + v
        return SymbolicVector(tuple(sorted((i, v) for i, v in merged.items() if v)),
                              self.orbits + other.orbits)

    def to_json(self):
        return {
            "finite": [[i, v.to_json()] for i, v in self.entries],
            "orbits": [orbit.to_json() for orbit in self.orbits],
        }


@dataclass(frozen=True)
class OrbitFamily:
    """Member k is the geometric vector rooted at offset + stride * k, then sent through e_i -> e_{p i + s}."""
    offset: int
    stride: int
    ratio: RationalComplex = C_ZERO
    slope: int = 1
    step: int = 1
    p: int = 1
    s: int = 0

    def root(self, k):
        return self.offset + self.stride * k

    def member(self, k):
        vector = SymbolicVector.geometric(self.ratio, self.root(k), self.slope, self.step)
        return vector.reindex(self.p, self.s)

    def pivot(self, k):
        return self.p * self.root(k) + self.s

    def reindex(self, p, s):
        return OrbitFamily(self.offset, self.stride, self.ratio, self.slope, self.step,
                           p * self.p, p * self.s + s)

    def to_json(self):
        return {
            "kind": "orbit", "offset": self.offset, "stride": self.stride,
            "ratio": self.ratio.to_json(), "slope": self.slope, "step": self.step,
            "map": [self.p, self.s],
        }


@dataclass(frozen=True)
class InterleavedFamily:
    """Members alternate between two families: 2k from the first, 2k+1 from the second."""
    first: object
    second: object

    def member(self, k):
        return self.first.member(k // 2) if k % 2 == 0 else self.second.member(k // 2)

    def pivot(self, k):
        return self.first.pivot(k // 2) if k % 2 == 0 else self.second.pivot(k // 2)

    def reindex(self, p, s):
        return InterleavedFamily(self.first.reindex(p, s), self.second.reindex(p, s))

    def to_json(self):
        return {"kind": "interleaved", "first": self.first.to_json(), "second": self.second.to_json()}


@dataclass(frozen=True)
class KernelDescription:
    """Finitely many generators, then at most one infinite family.

    Generator p carries the value 1 at its pivot and 0 at every other
    generator's pivot, so positions can be paired one-to-one with slots.
    """
    vectors: tuple = ()
    pivots: tuple = ()
    family: object = None

    @property
    def finite_count(self):
        return len(self.vectors)

    @property
    def count(self):
        return INF if self.family is not None else ExtendedCount(len(self.vectors))

    @property
    def infinite(self):
        return self.family is not None

    def generator(self, position):
        if position < len(self.vectors):
            return self.vectors[position]
        if self.family is None:
            raise IndexError(position)
        return self.family.member(position - len(self.vectors))

    def pivot(self, position):
        if position < len(self.vectors):
            return self.pivots[position]
        if self.family is None:
            raise IndexError(position)
        return self.family.pivot(position - len(self.vectors))

    def reindex(self, p, s):
        return KernelDescription(tuple(v.reindex(p, s) for v in self.vectors),
                                 tuple(p * i + s for i in self.pivots),
                                 None if self.family is None else self.family.reindex(p, s))

    def merge(self, other):
        """Generators of a direct sum: finite parts in order, families interleaved."""
        if self.family is not None and other.family is not None:
            family = InterleavedFamily(self.family, other.family)
        else:
            family = self.family if self.family is not None else other.family
        return KernelDescription(self.vectors + other.vectors, self.pivots + other.pivots, family)

    def to_json(self, preview=4):
        data = {
            "dimension": self.count.to_json(),
            "vectors": [v.to_json() for v in self.vectors],
            "pivots": list(self.pivots),
        }
        if self.family is not None:
            data["family"] = self.family.to_json()
            data["family_pivots"] = [self.family.pivot(k) for k in range(preview)]
        return data


EMPTY_KERNEL = KernelDescription()

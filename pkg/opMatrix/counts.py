from dataclasses import dataclass
from functools import total_ordering
import math

from .errors import ModelError


@total_ordering
@dataclass(frozen=True)
class ExtendedCount:
    """A dimension in N ∪ {∞}. ``value`` is None for ∞."""
    value: int = 0

    def __post_init__(self):
        if self.value is not None and (not isinstance(self.value, int) or self.value < 0):
            raise ModelError(f"dimension must be a non-negative integer or ∞, got {self.value!r}")

    @classmethod
    def coerce(cls, value):
        if isinstance(value, ExtendedCount):
            return value
        if value is None or value == math.inf or value == 'inf':
            return INF
        if isinstance(value, str):
            value = int(value)
        integral = int(value)
        if integral != value:
            raise ValueError(f"dimension must be integral, got {value!r}")
        return cls(integral)

    @property
    def is_finite(self):
        return self.value is not None

    @property
    def is_infinite(self):
        return self.value is None

    def __add__(self, other):
        other = ExtendedCount.coerce(other)
        if self.value is None or other.value is None:
            return INF
        return ExtendedCount(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        """Index-style difference: ∞ - n = +∞, n - ∞ = -∞, ∞ - ∞ undefined."""
        other = ExtendedCount.coerce(other)
        if self.value is None and other.value is None:
            raise ArithmeticError("∞ - ∞ is undefined")
        if self.value is None:
            return math.inf
        if other.value is None:
            return -math.inf
        return self.value - other.value

    def saturating_sub(self, other):
        """Codimension left after removing ``other`` from ``self``; ∞ - ∞ counts as 0."""
        other = ExtendedCount.coerce(other)
        if self.value is None:
            return ZERO if other.value is None else INF
        if other.value is None:
            return ZERO
        return ExtendedCount(max(self.value - other.value, 0))

    def __lt__(self, other):
        other = ExtendedCount.coerce(other)
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return '∞' if self.value is None else str(self.value)

    def to_json(self):
        return 'inf' if self.value is None else self.value

    @classmethod
    def from_json(cls, data):
        return cls.coerce(data)


INF = ExtendedCount(None)
ZERO = ExtendedCount(0)
ONE = ExtendedCount(1)


def total(counts):
    """Sum of an iterable of counts; the empty sum is 0."""
    result = ZERO
    for count in counts:
        result = result + count
    return result


@dataclass(frozen=True)
class SpaceModel:
    """A Hilbert space known only through its dimension."""
    dim: ExtendedCount

    def __str__(self):
        return f"H({self.dim})"


@dataclass(frozen=True)
class FredholmData:
    """Kernel dimension, cokernel dimension and range shape of D - λ at one λ.

    ``closure_codim`` is the codimension of the closure of the range, which
    equals ``beta`` whenever the range is closed. It is what the adjoint sees
    as its kernel.
    """
    alpha: ExtendedCount
    beta: ExtendedCount
    range_closed: bool
    range_dense: bool
    closure_codim: ExtendedCount

    def __post_init__(self):
        if self.range_closed and self.closure_codim != self.beta:
            raise ModelError("closed range must have closure codimension equal to beta")
        if not self.range_closed and self.beta.is_finite:
            raise ModelError("a non-closed range has infinite codimension")
        if self.range_dense != (self.closure_codim == ZERO):
            raise ModelError("range is dense exactly when its closure has codimension 0")

    @classmethod
    def closed(cls, alpha, beta):
        alpha, beta = ExtendedCount.coerce(alpha), ExtendedCount.coerce(beta)
        return cls(alpha, beta, True, beta == ZERO, beta)

    @classmethod
    def non_closed(cls, alpha, closure_codim=ZERO):
        alpha, closure_codim = ExtendedCount.coerce(alpha), ExtendedCount.coerce(closure_codim)
        return cls(alpha, INF, False, closure_codim == ZERO, closure_codim)

    def dual(self):
        """Data of the adjoint at the same λ."""
        if self.range_closed:
            return FredholmData.closed(self.beta, self.alpha)
        return FredholmData.non_closed(self.closure_codim, self.alpha)

    def __add__(self, other):
        """Data of a direct sum."""
        closed = self.range_closed and other.range_closed
        if closed:
            return FredholmData.closed(self.alpha + other.alpha, self.beta + other.beta)
        return FredholmData.non_closed(self.alpha + other.alpha,
                                       self.closure_codim + other.closure_codim)

    @property
    def index(self):
        return self.alpha - self.beta

    @property
    def left_fredholm(self):
        return self.alpha.is_finite and self.range_closed

    @property
    def right_fredholm(self):
        return self.beta.is_finite

    @property
    def fredholm(self):
        return self.left_fredholm and self.right_fredholm

    @property
    def left_weyl(self):
        return self.left_fredholm and self.alpha <= self.beta

    @property
    def right_weyl(self):
        return self.right_fredholm and self.beta <= self.alpha

    @property
    def left_invertible(self):
        return self.alpha == ZERO and self.range_closed

    @property
    def right_invertible(self):
        return self.beta == ZERO

    def to_json(self):
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "range_closed": self.range_closed,
            "range_dense": self.range_dense,
            "closure_codim": self.closure_codim.to_json(),
        }

    def __str__(self):
        shape = 'closed' if self.range_closed else ('dense' if self.range_dense else 'non-closed')
        return f"(α={self.alpha}, β={self.beta}, {shape})"

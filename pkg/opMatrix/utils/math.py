from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import floor, ceil, isqrt
import re

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def to_fraction(value):
    """Coerce an int, Fraction or 'p/q' string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def parse_fraction(text):
    """Parse 'p' or 'p/q' into a Fraction; floats are rejected."""
    match = _RATIONAL.match(text)
    if match is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def ratio_str(value):
    """Serialise a Fraction as 'num/den'."""
    return f"{value.numerator}/{value.denominator}"


def short_str(value):
    """Render a Fraction as '3' or '1/2'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sgn(value):
    return (value > 0) - (value < 0)


def is_square(value):
    """True when a non-negative Fraction is the square of a rational."""
    if value < 0:
        return False
    n, d = value.numerator, value.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(value):
    """Exact square root of a rational square, else None."""
    if not is_square(value):
        return None
    return Fraction(isqrt(value.numerator), isqrt(value.denominator))


def simplest_between(lo, hi):
    """Simplest rational strictly inside (lo, hi)."""
    if lo >= hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return ZERO
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    n = floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    lo_f, hi_f = lo - n, hi - n
    if lo_f == 0:
        return n + Fraction(1, floor(1 / hi_f) + 1)
    return n + 1 / simplest_between(1 / hi_f, 1 / lo_f)


@dataclass(frozen=True, slots=True)
class RationalComplex:
    """A point of Q(i). Ordering is lexicographic on (re, im)."""
    re: Fraction = ZERO
    im: Fraction = ZERO

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, 're', to_fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, 'im', to_fraction(self.im))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(to_fraction(value))

    @classmethod
    def parse(cls, text):
        """Parse 'a', 'bi', 'a+bi', 'a-bi' with a, b integers or p/q."""
        s = text.replace(' ', '')
        if not s:
            raise ValueError("empty complex literal")
        if not s.endswith('i'):
            return cls(parse_fraction(s))
        body = s[:-1]
        split = None
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in '+-' and body[pos - 1] != '/':
                split = pos
                break
        if split is None:
            return cls(ZERO, _imag_part(body))
        return cls(parse_fraction(body[:split]), _imag_part(body[split:]))

    def __add__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return RationalComplex.coerce(other) - self

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __mul__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalComplex.coerce(other)
        norm = other.abs2()
        if norm == 0:
            raise ZeroDivisionError("division by the complex zero")
        num = self * other.conjugate()
        return RationalComplex(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return RationalComplex.coerce(other) / self

    def __pow__(self, exponent):
        result, base = RationalComplex(ONE), self
        if exponent < 0:
            base, exponent = ONE / base, -exponent
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __lt__(self, other):
        return (self.re, self.im) < (other.re, other.im)

    def conjugate(self):
        return RationalComplex(self.re, -self.im)

    def abs2(self):
        """Squared modulus."""
        return self.re * self.re + self.im * self.im

    def modulus(self):
        """Exact modulus, or None when it is irrational."""
        return rational_sqrt(self.abs2())

    def is_real(self):
        return self.im == 0

    def __str__(self):
        if self.im == 0:
            return short_str(self.re)
        imag = _imag_str(self.im)
        if self.re == 0:
            return imag
        sign = '' if imag.startswith('-') else '+'
        return f"{short_str(self.re)}{sign}{imag}"

    def to_json(self):
        return {"re": ratio_str(self.re), "im": ratio_str(self.im)}

    @classmethod
    def from_json(cls, data):
        return cls(parse_fraction(data["re"]), parse_fraction(data["im"]))


def _imag_part(text):
    if text in ('', '+'):
        return ONE
    if text == '-':
        return -ONE
    return parse_fraction(text)


def _imag_str(value):
    if value == 1:
        return 'i'
    if value == -1:
        return '-i'
    return f"{short_str(value)}i"


C_ZERO = RationalComplex()
C_ONE = RationalComplex(ONE)


@dataclass(frozen=True, slots=True)
class QuadraticSurd:
    """a + b*sqrt(d) with rational a, b and a non-square integer d > 1 (d = 0 when rational)."""
    a: Fraction
    b: Fraction = ZERO
    d: int = 0

    @classmethod
    def make(cls, a, b=ZERO, d=0):
        a, b = to_fraction(a), to_fraction(b)
        if d < 0:
            raise ValueError("negative radicand")
        if b == 0 or d == 0:
            return cls(a)
        root = isqrt(d)
        if root * root == d:
            return cls(a + b * root)
        return cls(a, b, d)

    @classmethod
    def sqrt_of(cls, value):
        """Exact sqrt of a non-negative rational as a surd."""
        value = to_fraction(value)
        if value < 0:
            raise ValueError("square root of a negative rational")
        n, den = value.numerator, value.denominator
        return cls.make(ZERO, Fraction(1, den), n * den)

    def is_rational(self):
        return self.b == 0

    def _peer(self, other):
        if isinstance(other, QuadraticSurd):
            if other.b != 0 and self.b != 0 and other.d != self.d:
                raise ValueError("surds over different radicands")
            return other
        return QuadraticSurd(to_fraction(other))

    def _radicand(self, other):
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        other = self._peer(other)
        return QuadraticSurd.make(self.a + other.a, self.b + other.b, self._radicand(other))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._peer(other)
        return QuadraticSurd.make(self.a - other.a, self.b - other.b, self._radicand(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = self._peer(other)
        d = self._radicand(other)
        return QuadraticSurd.make(self.a * other.a + self.b * other.b * d,
                                  self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self):
        """(a + b sqrt d)(a - b sqrt d), a rational."""
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        other = self._peer(other)
        if other.b == 0:
            if other.a == 0:
                raise ZeroDivisionError("division by zero surd")
            return QuadraticSurd.make(self.a / other.a, self.b / other.a, self.d)
        n = other.norm()
        num = self * other.conjugate()
        return QuadraticSurd.make(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return QuadraticSurd(to_fraction(other)) / self

    def sign(self):
        sa, sb = sgn(self.a), sgn(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa * sgn(self.norm())

    def bounds(self, precision):
        """Rational enclosure [lo, hi] of width at most |b| * 2**-precision."""
        if self.b == 0:
            return self.a, self.a
        scale = 1 << precision
        s = isqrt(self.d * scale * scale)
        lo_root, hi_root = Fraction(s, scale), Fraction(s + 1, scale)
        if self.b > 0:
            return self.a + self.b * lo_root, self.a + self.b * hi_root
        return self.a + self.b * hi_root, self.a + self.b * lo_root

    def __float__(self):
        return float(self.a) + float(self.b) * (self.d ** 0.5)

    def __str__(self):
        if self.b == 0:
            return short_str(self.a)
        return f"{short_str(self.a)}{'+' if self.b > 0 else '-'}{short_str(abs(self.b))}√{self.d}"


def as_surd(value):
    if isinstance(value, QuadraticSurd):
        return value
    return QuadraticSurd(to_fraction(value))


def compare_surds(x, y):
    """Exact three-way comparison of two surds, radicands may differ."""
    x, y = as_surd(x), as_surd(y)
    if x.b == 0 or y.b == 0 or x.d == y.d:
        return (x - y).sign()
    p = x.a - y.a
    u, v = x.b, -y.b
    su, sv = sgn(u), sgn(v)
    if su == sv:
        w_sign = su
    else:
        w_sign = su * sgn(u * u * x.d - v * v * y.d)
    sp = sgn(p)
    if w_sign == 0 or sp == 0 or sp == w_sign:
        return sp if sp != 0 else w_sign
    gap = QuadraticSurd.make(p * p - u * u * x.d - v * v * y.d, -2 * u * v, x.d * y.d)
    s = gap.sign()
    if s > 0:
        return sp
    if s < 0:
        return w_sign
    return 0


def sort_surds(values):
    """Sort and de-duplicate surds exactly."""
    ordered = sorted(values, key=cmp_to_key(compare_surds))
    unique = []
    for value in ordered:
        if not unique or compare_surds(unique[-1], value) != 0:
            unique.append(value)
    return unique


def rational_between(x, y):
    """Simplest rational strictly between surds x < y."""
    x, y = as_surd(x), as_surd(y)
    precision = 8
    while True:
        _, x_hi = x.bounds(precision)
        y_lo, _ = y.bounds(precision)
        if x_hi < y_lo:
            return simplest_between(x_hi, y_lo)
        if precision > 4096:
            raise ValueError(f"no gap between {x} and {y}")
        precision *= 2


def rational_below(x):
    lo, _ = as_surd(x).bounds(4)
    return Fraction(floor(lo) - 1)


def rational_above(x):
    _, hi = as_surd(x).bounds(4)
    return Fraction(ceil(hi) + 1)


def modulus_bound(value):
    """Rational upper bound |re| + |im| on the modulus of a Gaussian rational."""
    return abs(value.re) + abs(value.im)

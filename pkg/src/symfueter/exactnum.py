"""Exact arithmetic in the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction`.  Internally a component that
happens to be an integer is kept as a plain ``int``; the bulk of the
coefficients met in operator calculus are Gaussian integers and int
arithmetic is several times cheaper than Fraction arithmetic.
"""

from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "GaussianRational",
    "I",
    "ONE",
    "ZERO",
    "as_gr",
    "parse_rational",
    "format_rational",
    "gr_add",
    "gr_mul",
    "gr_pow",
]

Rational = Fraction


def _canon(x):
    # int or Fraction with denominator > 1; never a Fraction equal to an int
    if type(x) is int:
        return x
    if type(x) is Fraction:
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, _RationalABC):
        return _canon(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction; floats are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if any(c in s for c in ".eE"):
        raise ValueError(f"rational expected as 'p/q', got {text!r}")
    return Fraction(s)


def format_rational(x):
    """Serialize as reduced ``"p/q"`` (denominator always written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and hashable.  Equality with ``int`` and
    ``Fraction`` works as expected, so ``GaussianRational(2) == 2``.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            self._re, self._im = re._re, re._im
            return
        if isinstance(re, str):
            re = parse_rational(re)
        if isinstance(im, str):
            im = parse_rational(im)
        self._re = _canon(re)
        self._im = _canon(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        return obj

    @classmethod
    def _from(cls, re, im):
        # re/im come from int/Fraction arithmetic and may need demotion
        if type(re) is Fraction and re.denominator == 1:
            re = re.numerator
        if type(im) is Fraction and im.denominator == 1:
            im = im.numerator
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        return obj

    @property
    def re(self):
        return Fraction(self._re)

    @property
    def im(self):
        return Fraction(self._im)

    def is_zero(self):
        return self._re == 0 and self._im == 0

    def __bool__(self):
        return not (self._re == 0 and self._im == 0)

    def is_real(self):
        return self._im == 0

    def conjugate(self):
        return GaussianRational._raw(self._re, -self._im)

    def norm(self):
        """|z|^2 as a Fraction."""
        return Fraction(self._re * self._re + self._im * self._im)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = as_gr(other, strict=False)
            if other is NotImplemented:
                return NotImplemented
        return GaussianRational._from(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = as_gr(other, strict=False)
            if other is NotImplemented:
                return NotImplemented
        return GaussianRational._from(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = as_gr(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self._re, self._im, other._re, other._im
            if b == 0:
                if d == 0:
                    return GaussianRational._from(a * c, 0)
                return GaussianRational._from(a * c, a * d)
            if d == 0:
                return GaussianRational._from(a * c, b * c)
            return GaussianRational._from(a * c - b * d, a * d + b * c)
        if type(other) is int or type(other) is Fraction:
            return GaussianRational._from(self._re * other, self._im * other)
        other = as_gr(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self * other

    __rmul__ = __mul__

    def inverse(self):
        nrm = self._re * self._re + self._im * self._im
        if nrm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._from(Fraction(self._re) / nrm, Fraction(-self._im) / nrm)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = as_gr(other, strict=False)
            if other is NotImplemented:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gr(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        return gr_pow(self, k)

    # comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return self._im == 0 and self._re == other
        if isinstance(other, complex):
            return self._re == other.real and self._im == other.imag
        return NotImplemented

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    # display / serialization -----------------------------------------

    def __repr__(self):
        return f"GaussianRational({str(self._re)!r}, {str(self._im)!r})"

    def __str__(self):
        re, im = self._re, self._im
        if im == 0:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"({im})i" if type(im) is Fraction else f"{im}i"
        if re == 0:
            return ims
        sep = "" if ims.startswith("-") else "+"
        return f"{re}{sep}{ims}"

    def to_json(self):
        return {"re": format_rational(self._re), "im": format_rational(self._im)}

    @classmethod
    def from_json(cls, obj):
        return cls(parse_rational(obj["re"]), parse_rational(obj["im"]))

    def __complex__(self):
        return complex(float(self._re), float(self._im))


def as_gr(x, strict=True):
    """Coerce ``x`` (int, Fraction, str ``"p/q"``, GaussianRational) to a GaussianRational."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return GaussianRational._raw(_canon(x), 0)
    if isinstance(x, str):
        return GaussianRational(parse_rational(x))
    if strict:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational exactly")
    return NotImplemented


ZERO = GaussianRational._raw(0, 0)
ONE = GaussianRational._raw(1, 0)
I = GaussianRational._raw(0, 1)


def gr_add(a, b):
    return as_gr(a) + as_gr(b)


def gr_mul(a, b):
    return as_gr(a) * as_gr(b)


def gr_pow(a, k):
    """``a**k`` by repeated squaring; ``a**0 == 1`` (including ``0**0``)."""
    if not isinstance(k, int) or k < 0:
        raise ValueError("exponent must be a nonnegative integer")
    base = as_gr(a)
    result = ONE
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


_I_POWERS = (ONE, I, -ONE, -I)


def i_power(k):
    """``i**k`` for any integer k."""
    return _I_POWERS[k % 4]

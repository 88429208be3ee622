"""Exact arithmetic over the Gaussian rationals Q(i).

Values are immutable pairs of ``gmpy2.mpq`` (always in lowest terms with a
positive denominator).  A thin complex floating-point backend is provided by
the builtin :class:`complex` type; see :func:`to_complex`.
"""

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import is_square, isqrt, mpq

from .errors import PreconditionError

__all__ = [
    "GaussianRational",
    "ComplexFloat",
    "gr",
    "parse_scalar",
    "format_scalar",
    "sqrt_exact",
    "is_root_of_unity",
    "to_complex",
    "conj",
    "ZERO",
    "ONE",
    "I",
]

ComplexFloat = complex

_MPQ = type(mpq(0))
_MPQ0 = mpq(0)


def _new(re_, im_):
    obj = object.__new__(GaussianRational)
    obj.re = re_
    obj.im = im_
    return obj


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, _MPQ, Rational)):
        return _new(mpq(x), _MPQ0)
    return None


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re_=0, im_=0):
        if isinstance(re_, GaussianRational):
            if im_:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re_.re, re_.im
            return
        if isinstance(re_, str):
            v = parse_scalar(re_)
            self.re, self.im = v.re, v.im
            return
        self.re = mpq(re_)
        self.im = mpq(im_)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            if not d:
                return _new(a * c, _MPQ0)
            return _new(a * c, a * d)
        if not d:
            return _new(a * c, b * c)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return _new(1 / a, _MPQ0)
        n = a * a + b * b
        return _new(a / n, -b / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero")
            return _new(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- misc -------------------------------------------------------------
    def conj(self):
        return _new(self.re, -self.im)

    def is_real(self):
        return not self.im

    def norm(self):
        """The field norm ``re^2 + im^2`` (a rational)."""
        return self.re * self.re + self.im * self.im

    def key(self):
        """Lexicographic sort key ``(re, im)``."""
        return (self.re, self.im)

    def height(self):
        """Largest bit length among the four integers defining the value."""
        return max(
            self.re.numerator.bit_length(),
            self.re.denominator.bit_length(),
            self.im.numerator.bit_length(),
            self.im.denominator.bit_length(),
        )

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational('{format_scalar(self)}')"

    def __str__(self):
        return format_scalar(self)


ZERO = _new(_MPQ0, _MPQ0)
ONE = _new(mpq(1), _MPQ0)
I = _new(_MPQ0, mpq(1))


def gr(x):
    """Coerce ``x`` (int, Fraction, mpq, str or GaussianRational) to a scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    v = _coerce(x)
    if v is None:
        raise TypeError(f"cannot convert {x!r} to GaussianRational")
    return v


_REAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(text):
    if text in ("", "+"):
        return mpq(1)
    if text == "-":
        return mpq(-1)
    if not _REAL.match(text):
        try:
            return mpq(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scalar component {text!r}") from exc
    try:
        return mpq(Fraction(text))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc


def parse_scalar(text):
    """Parse ``"p/q"``, ``"p/q+r/si"``, ``"i"``, ``"-3/4i"`` and similar forms."""
    s = str(text).strip().replace("−", "-").replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return _new(_parse_rational(s), _MPQ0)
    body = s[:-1]
    idx = max(body.rfind("+"), body.rfind("-"))
    if idx <= 0:
        return _new(_MPQ0, _parse_rational(body))
    real_part, imag_part = body[:idx], body[idx:]
    if real_part.endswith("+"):
        real_part = real_part[:-1]
    if imag_part.startswith("+-"):
        imag_part = imag_part[1:]
    return _new(_parse_rational(real_part), _parse_rational(imag_part))


def format_scalar(x):
    """Canonical text form: ``"p/q"`` or ``"p/q+r/si"`` in lowest terms."""
    x = gr(x)
    head = f"{x.re.numerator}/{x.re.denominator}"
    if not x.im:
        return head
    sign = "+" if x.im > 0 else "-"
    return f"{head}{sign}{abs(x.im.numerator)}/{x.im.denominator}i"


def _rational_sqrt(r):
    if r < 0:
        return None
    num, den = r.numerator, r.denominator
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


def sqrt_exact(x):
    """Return ``y`` in Q(i) with ``y*y == x``, or ``None`` if none exists.

    Of the two roots the canonical one is returned: ``re > 0``, or
    ``re == 0`` and ``im > 0``.
    """
    x = gr(x)
    if not x:
        return ZERO
    a, b = x.re, x.im
    if not b:
        r = _rational_sqrt(abs(a))
        if r is None:
            return None
        return _new(r, _MPQ0) if a > 0 else _new(_MPQ0, r)
    m = _rational_sqrt(a * a + b * b)
    if m is None:
        return None
    s = _rational_sqrt((a + m) / 2)
    t = _rational_sqrt((m - a) / 2)
    if s is None or t is None:
        return None
    if b < 0:
        t = -t
    return _new(s, t)


def is_root_of_unity(q):
    """True iff ``q`` is one of 1, -1, i, -i (the roots of unity in Q(i))."""
    q = gr(q)
    if not q:
        raise PreconditionError("zero is not a valid deformation parameter")
    return (q.im == 0 and abs(q.re) == 1) or (q.re == 0 and abs(q.im) == 1)


def to_complex(x):
    """Convert a scalar (exact or float) to a Python complex."""
    return complex(x)


def conj(x):
    """Complex conjugate for either backend."""
    if isinstance(x, GaussianRational):
        return x.conj()
    return complex(x).conjugate()

"""Exact arithmetic in the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  :class:`GaussianRational` pairs two of them.  Conversion to
``complex`` is the only place rounding happens, and it is explicit.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, FloatOverflowError

__all__ = [
    "GaussianRational",
    "alpha",
    "to_float",
    "parse_gaussian",
    "format_gaussian",
    "as_gaussian",
    "ZERO",
    "ONE",
    "I",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i); immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass Fraction or int")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- construction helpers ---------------------------------------------
    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- field operations ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re * other, self.im * other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GaussianRational:
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def conj(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    # -- comparisons -----------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- conversion ------------------------------------------------------------
    def __complex__(self):
        return to_float(self)

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_gaussian(x) -> GaussianRational:
    """Coerce an int, Fraction, GaussianRational or textual encoding."""
    if isinstance(x, str):
        return parse_gaussian(x)
    g = _coerce(x)
    if g is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational exactly")
    return g


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))

_ALPHA = {
    "+": GaussianRational._raw(Fraction(1, 2), Fraction(1, 2)),
    "-": GaussianRational._raw(Fraction(1, 2), Fraction(-1, 2)),
}


def alpha(sign: str) -> GaussianRational:
    """(1+i)/2 for ``"+"`` and (1-i)/2 for ``"-"``."""
    try:
        return _ALPHA[sign]
    except KeyError:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}") from None


def _fraction_to_float(q: Fraction) -> float:
    try:
        # int / int true division is correctly rounded
        return q.numerator / q.denominator
    except OverflowError:
        raise FloatOverflowError(f"rational {q} exceeds the float range") from None


def to_float(q) -> complex:
    """Round each component to the nearest double.  Inexact by design."""
    q = as_gaussian(q)
    return complex(_fraction_to_float(q.re), _fraction_to_float(q.im))


# -- textual encoding "p/q+r/si" -------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_FULL = re.compile(rf"^\s*([+-]?{_RAT})\s*([+-])\s*({_RAT})?\s*i\s*$")
_REAL_ONLY = re.compile(rf"^\s*([+-]?{_RAT})\s*$")
_IMAG_ONLY = re.compile(rf"^\s*([+-]?)({_RAT})?\s*i\s*$")


def _parse_rat(s: str) -> Fraction:
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {s!r}") from None


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``"p/q+r/si"``; also accepts a bare real part or ``"ri"``."""
    m = _FULL.match(text)
    if m:
        re_part = _parse_rat(m.group(1))
        im_part = _parse_rat(m.group(3) or "1")
        if m.group(2) == "-":
            im_part = -im_part
        return GaussianRational(re_part, im_part)
    m = _REAL_ONLY.match(text)
    if m:
        return GaussianRational(_parse_rat(m.group(1)))
    m = _IMAG_ONLY.match(text)
    if m:
        im_part = _parse_rat(m.group(2) or "1")
        return GaussianRational(0, -im_part if m.group(1) == "-" else im_part)
    raise DomainError(f"not a Gaussian rational: {text!r}")


def _format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gaussian(q) -> str:
    q = as_gaussian(q)
    im = q.im
    sign = "-" if im < 0 else "+"
    return f"{_format_rat(q.re)}{sign}{_format_rat(abs(im))}i"

"""Univariate polynomials in ``t`` with Gaussian-rational coefficients.

These are the T-images of discrete analytic polynomials and the numerators
and denominators of rational Hardy-space elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import PoleError
from .exact import ONE, ZERO, GaussianRational, as_gaussian, to_float


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial, ``coeffs[k]`` multiplies ``t**k``.  Zero is ``()``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([as_gaussian(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _from_trimmed(cls, coeffs: tuple) -> Poly:
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def monomial(cls, k: int, c=ONE) -> Poly:
        return cls([ZERO] * k + [as_gaussian(c)])

    @classmethod
    def linear(cls, c0, c1) -> Poly:
        """``c0 + c1*t``."""
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._from_trimmed(_trim(out))

    def __neg__(self) -> Poly:
        return Poly._from_trimmed(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = as_gaussian(other)
            if not c:
                return Poly()
            return Poly._from_trimmed(tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._from_trimmed(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([ONE])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = other.coeffs[-1].inverse()
        if len(rem) - 1 < d:
            return Poly(), self
        quot = [ZERO] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * lead_inv
            quot[k - d] = c
            if c:
                for j in range(d + 1):
                    rem[k - d + j] = rem[k - d + j] - c * other.coeffs[j]
        return Poly(quot), Poly(rem[:d])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, t):
        """Horner evaluation; exact for Gaussian-rational ``t``, float for complex."""
        if isinstance(t, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * t + to_float(c)
            return acc
        t = as_gaussian(t)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def conj_coeffs(self) -> Poly:
        """Coefficientwise conjugate, i.e. ``conj(p(conj(t)))``."""
        return Poly._from_trimmed(tuple(c.conj() for c in self.coeffs))

    def scale(self, r) -> Poly:
        """``p(r*t)``."""
        r = as_gaussian(r)
        out, rk = [], ONE
        for c in self.coeffs:
            out.append(c * rk)
            rk = rk * r
        return Poly(out)

    def shift(self, k: int) -> Poly:
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return Poly._from_trimmed((ZERO,) * k + self.coeffs)

    def to_complex(self) -> np.ndarray:
        return np.array([to_float(c) for c in self.coeffs], dtype=complex)

    def abs_coeff_sum(self, r: float = 1.0, weight_power: int = 0) -> float:
        """``sum_k k**weight_power * |c_k| * r**k`` in floating point."""
        total = 0.0
        for k, c in enumerate(self.coeffs):
            if c:
                total += (k**weight_power) * abs(to_float(c)) * r**k
        return total

    def laurent_abs2(self) -> dict[int, GaussianRational]:
        """Coefficients of ``|p(t)|**2`` on the unit circle as a Laurent polynomial.

        ``c[k] = sum_j p[j+k] * conj(p[j])`` for ``-deg <= k <= deg``.
        """
        p = self.coeffs
        out: dict[int, GaussianRational] = {}
        for k in range(-(len(p) - 1), len(p)):
            acc = ZERO
            for j in range(max(0, -k), min(len(p), len(p) - k)):
                acc = acc + p[j + k] * p[j].conj()
            out[k] = acc
        return out


def series_quotient(num: Poly, den: Poly, n_terms: int) -> list[GaussianRational]:
    """First ``n_terms`` Taylor coefficients of ``num/den`` at 0, by exact long division."""
    if not den or not den[0]:
        raise PoleError("denominator vanishes at t = 0")
    inv0 = den[0].inverse()
    d = den.coeffs
    out: list[GaussianRational] = []
    for n in range(n_terms):
        acc = num[n]
        for k in range(1, min(n, len(d) - 1) + 1):
            if d[k]:
                acc = acc - d[k] * out[n - k]
        out.append(acc * inv0)
    return out


@dataclass(frozen=True)
class RationalFunction:
    """``num(t)/den(t)`` with Gaussian-rational coefficients, no pole analysis."""

    num: Poly
    den: Poly

    def __call__(self, t):
        d = self.den(t)
        if d == 0:
            raise PoleError(f"pole at t = {t}")
        return self.num(t) / d

    def taylor(self, n_terms: int) -> list[GaussianRational]:
        return series_quotient(self.num, self.den, n_terms)


def roots_outside_closed_disk(p: Poly) -> bool:
    """True iff every root of ``p`` has modulus > 1.  Exact Schur-Cohn reduction.

    With ``a0 = p(0)`` and ``am`` the leading coefficient, the polynomial
    ``conj(a0)*p - am*p_reflected`` has strictly lower degree and, when
    ``|a0| > |am|``, exactly the same zeros in the closed unit disk as ``p``.
    """
    if not p:
        return False
    c = list(p.coeffs)
    while len(c) > 1:
        a0, am = c[0], c[-1]
        if a0.abs2() <= am.abs2():
            return False
        m = len(c) - 1
        a0c = a0.conj()
        c = list(_trim([a0c * c[k] - am * c[m - k].conj() for k in range(m)]))
    return True


def min_root_modulus_estimate(p: Poly) -> float:
    if p.degree < 1:
        return float("inf")
    roots = np.roots(p.to_complex()[::-1])
    return float(np.min(np.abs(roots)))


def binomial_series(exponent: int, scale: GaussianRational, n_terms: int) -> list[GaussianRational]:
    """Coefficients of ``(1 + scale*t)**exponent`` for any integer exponent."""
    scale = as_gaussian(scale)
    out = [ONE]
    c = Fraction(1)
    sk = ONE
    for k in range(n_terms - 1):
        c = c * (exponent - k) / (k + 1)
        sk = sk * scale
        out.append(sk * c)
    return out


def truncated_product(a: Sequence, b: Sequence, n_terms: int) -> list[GaussianRational]:
    out = [ZERO] * n_terms
    for i, x in enumerate(a[:n_terms]):
        if not x:
            continue
        for j in range(min(len(b), n_terms - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out

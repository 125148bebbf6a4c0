"""The discrete analytic polynomials z^(n) and the convolution ring.

Three independent routes to z^(n) are provided:

* :func:`basis_poly` -- symbolic, as a polynomial in ``x = Re z``, ``y = Im z``,
  from the product of binomial series of ``(1+t)**x``, ``(1+a_+ t)**y`` and
  ``(1+a_- t)**(-y)``;
* :func:`basis_values` -- the same three series, but with ``x``, ``y``
  substituted first (fast exact values at one lattice point);
* :func:`basis_poly_recursive` -- ``n`` applications of the discrete
  antiderivative ``Z`` to the constant 1 on a window.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import PoleError, WindowError
from .exact import ONE, ZERO, GaussianRational, alpha, as_gaussian, to_float
from .lattice import (
    EXACT,
    LatticeFunction,
    LatticePoint,
    Window,
    delta_x,
    is_discrete_analytic,
    point,
    z_operator,
)
from .errors import NotAnalyticError
from .polynomial import (
    Poly,
    RationalFunction,
    binomial_series,
    truncated_product,
)

__all__ = [
    "BivariatePolynomial",
    "BasisTable",
    "CoefficientPoly",
    "basis_poly",
    "basis_poly_recursive",
    "basis_values",
    "coefficients_from_lattice",
    "convolve",
    "generating_function",
    "generating_function_eval",
    "conjugate_basis_identity_check",
]


# -- symbolic construction ------------------------------------------------------


class BivariatePolynomial:
    """Polynomial in ``x``, ``y`` with Gaussian-rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], GaussianRational]):
        self.terms = {k: as_gaussian(v) for k, v in terms.items() if v}

    def __call__(self, x: int, y: int) -> GaussianRational:
        xs = _powers(x, self.max_deg(0))
        ys = _powers(y, self.max_deg(1))
        acc = ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * (xs[i] * ys[j])
        return acc

    def max_deg(self, var: int) -> int:
        return max((k[var] for k in self.terms), default=0)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def on_window(self, window: Window) -> LatticeFunction:
        return LatticeFunction(window, {p: self(p.x, p.y) for p in window}, EXACT)

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        parts = [f"({c})*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def _powers(v: int, deg: int) -> list[int]:
    out = [1]
    for _ in range(deg):
        out.append(out[-1] * v)
    return out


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


@lru_cache(maxsize=None)
def _binomial_in_var(k: int, sign: int) -> tuple[Fraction, ...]:
    """Coefficients (in the variable) of ``C(sign*v, k)``."""
    coeffs: list = [Fraction(1)]
    for j in range(k):
        # multiply by (sign*v - j)/(j+1)
        coeffs = _poly_mul(coeffs, [Fraction(-j, j + 1), Fraction(sign, j + 1)])
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _imag_factor(m: int) -> tuple[GaussianRational, ...]:
    """Coefficient of ``t**m`` in ``((1+a_+ t)/(1+a_- t))**y`` as a polynomial in ``y``."""
    ap, am = alpha("+"), alpha("-")
    acc = [ZERO] * (m + 1)
    for b in range(m + 1):
        c = m - b
        w = ap**b * am**c
        prod = _poly_mul(_binomial_in_var(b, 1), _binomial_in_var(c, -1))
        for j, q in enumerate(prod):
            if q:
                acc[j] = acc[j] + w * q
    return tuple(acc)


@lru_cache(maxsize=None)
def basis_poly(n: int) -> BivariatePolynomial:
    """z^(n) as an exact polynomial in ``x = Re z`` and ``y = Im z``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    terms: dict[tuple[int, int], GaussianRational] = {}
    for a in range(n + 1):
        xa = _binomial_in_var(a, 1)
        ym = _imag_factor(n - a)
        for i, cx in enumerate(xa):
            if not cx:
                continue
            for j, cy in enumerate(ym):
                if cy:
                    terms[(i, j)] = terms.get((i, j), ZERO) + cy * cx
    return BivariatePolynomial(terms)


# -- values at a lattice point ------------------------------------------------------

_VALUE_CACHE: dict[tuple[int, int], tuple[GaussianRational, ...]] = {}


def basis_values(z, n_max: int) -> tuple[GaussianRational, ...]:
    """Exact ``(z^(0), ..., z^(n_max))`` at one lattice point."""
    p = point(z)
    key = (p.x, p.y)
    cached = _VALUE_CACHE.get(key)
    if cached is not None and len(cached) > n_max:
        return cached[: n_max + 1]
    n_terms = max(n_max + 1, 2 * len(cached) if cached else 0)
    a = binomial_series(p.x, ONE, n_terms)
    b = binomial_series(p.y, alpha("+"), n_terms)
    c = binomial_series(-p.y, alpha("-"), n_terms)
    vals = tuple(truncated_product(truncated_product(a, b, n_terms), c, n_terms))
    _VALUE_CACHE[key] = vals
    return vals[: n_max + 1]


def basis_poly_recursive(n: int, window: Window) -> LatticeFunction:
    """``Z**n 1`` on the window, by repeated discrete integration."""
    f = LatticeFunction.constant(window, 1)
    for _ in range(n):
        f = z_operator(f)
    return f


# -- the convolution ring ---------------------------------------------------------


class CoefficientPoly:
    """``sum_n coeffs[n] * z^(n)``, a finite element of the convolution ring."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_gaussian(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientPoly is immutable")

    @classmethod
    def basis(cls, n: int) -> CoefficientPoly:
        return cls([0] * n + [1])

    @classmethod
    def from_t_image(cls, p: Poly) -> CoefficientPoly:
        return cls(p.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> GaussianRational:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if not isinstance(other, CoefficientPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CoefficientPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __add__(self, other: CoefficientPoly) -> CoefficientPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return CoefficientPoly(self[k] + other[k] for k in range(n))

    def __sub__(self, other: CoefficientPoly) -> CoefficientPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return CoefficientPoly(self[k] - other[k] for k in range(n))

    def __neg__(self):
        return CoefficientPoly(-c for c in self.coeffs)

    def scaled(self, c) -> CoefficientPoly:
        c = as_gaussian(c)
        return CoefficientPoly(c * v for v in self.coeffs)

    def odot(self, other: CoefficientPoly) -> CoefficientPoly:
        return convolve(self, other)

    def t_image(self) -> Poly:
        return Poly(self.coeffs)

    def __call__(self, z) -> GaussianRational:
        """Exact value at a lattice point."""
        if not self.coeffs:
            return ZERO
        vals = basis_values(z, self.degree)
        acc = ZERO
        for a, v in zip(self.coeffs, vals):
            if a and v:
                acc = acc + a * v
        return acc

    def on_window(self, window: Window) -> LatticeFunction:
        return LatticeFunction(window, {p: self(p) for p in window}, EXACT)


def convolve(p: CoefficientPoly, q: CoefficientPoly) -> CoefficientPoly:
    """``z^(m) (.) z^(n) = z^(m+n)``, extended bilinearly."""
    return CoefficientPoly((p.t_image() * q.t_image()).coeffs)


def coefficients_from_lattice(f: LatticeFunction, n_max: int) -> CoefficientPoly:
    """``(delta_x**n f)(0)`` for ``n = 0..n_max``."""
    w = f.window
    if LatticePoint(0, 0) not in w or w.x_max < n_max:
        raise WindowError(f"window {w.as_list()} too small for {n_max} differences at the origin")
    if w.width >= 2 and w.height >= 2 and not is_discrete_analytic(f):
        raise NotAnalyticError("coefficient extraction needs a discrete analytic function")
    row = f.restrict(Window(0, w.x_max, 0, 0))
    out = [row(0)]
    for _ in range(n_max):
        row = delta_x(row)
        out.append(row(0))
    return CoefficientPoly(out)


# -- generating function ------------------------------------------------------------


def generating_function(z) -> RationalFunction:
    """``(1+t)**x * ((1+a_+ t)/(1+a_- t))**y`` as an exact ratio of polynomials."""
    p = point(z)
    one_t = Poly([1, 1])
    plus = Poly([ONE, alpha("+")])
    minus = Poly([ONE, alpha("-")])
    num, den = Poly([1]), Poly([1])
    if p.x >= 0:
        num = num * one_t ** p.x
    else:
        den = den * one_t ** (-p.x)
    if p.y >= 0:
        num = num * plus ** p.y
        den = den * minus ** p.y
    else:
        num = num * minus ** (-p.y)
        den = den * plus ** (-p.y)
    return RationalFunction(num, den)


def generating_function_eval(z, t: complex) -> complex:
    g = generating_function(z)
    d = g.den(complex(t))
    if d == 0:
        raise PoleError(f"G_z has a pole at t = {t}")
    return g.num(complex(t)) / d


def conjugate_basis_identity_check(n: int, window: Window) -> bool:
    """Exact check of ``conj(z^(n)(conj z)) == z^(n)(z)`` on a conjugation-symmetric window."""
    if window.y_min != -window.y_max:
        raise WindowError("window is not symmetric under conjugation")
    bp = basis_poly(n)
    for p in window:
        if bp(p.x, -p.y).conj() != bp(p.x, p.y):
            return False
    return True


@dataclass(frozen=True)
class BasisTable:
    max_n: int
    polys: tuple[BivariatePolynomial, ...]

    @classmethod
    def build(cls, max_n: int) -> BasisTable:
        return cls(max_n, tuple(basis_poly(n) for n in range(max_n + 1)))

    def rows(self, window: Window) -> Iterator[tuple[int, int, int, GaussianRational]]:
        for n, bp in enumerate(self.polys):
            for p in window:
                yield n, p.x, p.y, bp(p.x, p.y)

    def to_csv(self, window: Window) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "x", "y", "re", "im"])
        for n, x, y, v in self.rows(window):
            c = to_float(v)
            w.writerow([n, x, y, repr(c.real), repr(c.imag)])
        return buf.getvalue()

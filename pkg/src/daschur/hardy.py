"""The Hardy space of discrete analytic functions on the right half-lattice.

An element is known through its coefficient stream ``f^(n)`` in the basis
z^(n) together with a decay certificate ``|f^(n)| <= C * r**n``.  Three
carriers are supported:

* :class:`~daschur.basis.CoefficientPoly` -- finitely many coefficients;
* :class:`RationalElement` -- the T-image is ``num(t)/den(t)`` with every pole
  outside the closed unit disk (kernels, Blaschke factors, Schur functions);
* :class:`TruncatedSeries` -- a known prefix plus a geometric tail bound.

Values at lattice points and inner products come back as :class:`EvalBound`:
a float value together with a rigorous bound on its distance to the exact
quantity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .basis import CoefficientPoly, basis_values, generating_function
from .errors import DivergentTailError, NonHermitianError, PoleError
from .exact import ZERO, GaussianRational, to_float
from .lattice import LatticePoint, point
from .polynomial import (
    Poly,
    RationalFunction,
    min_root_modulus_estimate,
    roots_outside_closed_disk,
    series_quotient,
)

DEFAULT_N = 64
DEFAULT_RHO = 1.2
SQRT2 = math.sqrt(2.0)
# relative inflation applied to float-evaluated bounds
_SLACK = 1e-12


# -- certified numerics helpers --------------------------------------------------


@dataclass(frozen=True)
class EvalBound:
    """A float ``value`` whose exact counterpart lies within ``abs_error``."""

    value: complex
    abs_error: float
    exact: GaussianRational | None = None

    def to_json(self) -> dict:
        # "+ 0.0" folds negative zero so output stays canonical
        return {"re": self.value.real + 0.0, "im": self.value.imag + 0.0, "err": self.abs_error}

    def contains(self, z: complex) -> bool:
        return abs(complex(z) - self.value) <= self.abs_error


def _rounding_error(q: GaussianRational, c: complex) -> float:
    dr = abs(q.re - Fraction(c.real))
    di = abs(q.im - Fraction(c.imag))
    if not dr and not di:
        return 0.0
    return float(dr + di) * (1 + 1e-15)


def _from_exact(q: GaussianRational, extra_error: float = 0.0) -> EvalBound:
    c = to_float(q)
    return EvalBound(c, extra_error + _rounding_error(q, c), q)


@dataclass(frozen=True)
class Decay:
    """``|f^(n)| <= constant * ratio**n`` for all ``n``; zero past ``degree`` if set."""

    constant: float
    ratio: float
    degree: int | None = None

    def bound(self, n: int) -> float:
        if self.degree is not None and n > self.degree:
            return 0.0
        return self.constant * self.ratio**n

    def weighted_tail(self, start: int, weight: float = 1.0) -> float:
        """Upper bound for ``sum_{n >= start} bound(n) * weight**n``."""
        if self.degree is not None:
            if start > self.degree:
                return 0.0
            return sum(self.bound(n) * weight**n for n in range(start, self.degree + 1)) * (1 + _SLACK)
        q = self.ratio * weight
        if q >= 1:
            raise DivergentTailError(f"combined decay ratio {q} >= 1")
        return self.constant * q**start / (1 - q) * (1 + _SLACK)


def _tail_of_product(a: Decay, b: Decay, start: int) -> float:
    """Upper bound for ``sum_{n >= start} a.bound(n) * b.bound(n)``."""
    degs = [d for d in (a.degree, b.degree) if d is not None]
    if degs:
        last = min(degs)
        if start > last:
            return 0.0
        return sum(a.bound(n) * b.bound(n) for n in range(start, last + 1)) * (1 + _SLACK)
    q = a.ratio * b.ratio
    if q >= 1:
        raise DivergentTailError(f"product of decay ratios {q} >= 1")
    return a.constant * b.constant * q**start / (1 - q) * (1 + _SLACK)


def _min_modulus_on_circle(p: Poly, r: float, max_samples: int = 2**18) -> float:
    """Certified positive lower bound for ``min_{|t|=r} |p(t)|``.

    Samples ``M`` equispaced points and subtracts ``L*pi/M`` where ``L`` bounds
    the derivative of ``|p(r e^{i theta})|`` in ``theta``.
    """
    c = p.to_complex()
    lip = p.abs_coeff_sum(r, weight_power=1)
    scale = p.abs_coeff_sum(r)
    m = 256
    while m <= max_samples:
        t = r * np.exp(2j * np.pi * np.arange(m) / m)
        vals = np.abs(np.polyval(c[::-1], t))
        lo = float(vals.min()) - lip * math.pi / m - _SLACK * scale
        if lo > 0:
            return lo
        m *= 2
    raise PoleError(f"could not separate the polynomial from zero on |t| = {r}")


def certify_pole_radius(den: Poly) -> float:
    """A float ``R`` such that every root of ``den`` has modulus > ``R``.

    The candidate comes from a numerical root estimate; it is accepted only
    after the exact Schur-Cohn test on ``den(R t)``.
    """
    if not den:
        raise PoleError("zero denominator")
    if not den[0]:
        raise PoleError("denominator vanishes at t = 0")
    if den.degree == 0:
        return math.inf
    est = min_root_modulus_estimate(den)
    for shrink in (1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.3, 0.6, 0.9):
        r = Fraction(est * (1 - shrink)).limit_denominator(10**6)
        if r <= 0:
            continue
        if roots_outside_closed_disk(den.scale(r)):
            return math.nextafter(r.numerator / r.denominator, 0.0)
    raise PoleError("could not certify a root-free disk for the denominator")


# -- carriers ----------------------------------------------------------------------


class RationalElement:
    """Hardy-space element whose T-image is ``num/den`` with poles outside the closed disk."""

    def __init__(self, num: Poly, den: Poly, pole_radius: float | None = None):
        if not den or not den[0]:
            raise PoleError("denominator must not vanish at t = 0")
        if pole_radius is None:
            pole_radius = certify_pole_radius(den)
        elif math.isfinite(pole_radius):
            if den.degree > 0 and not roots_outside_closed_disk(den.scale(Fraction(pole_radius))):
                raise PoleError(f"stated pole_radius {pole_radius} is not a valid lower bound")
        elif den.degree > 0:
            raise PoleError("infinite pole_radius with a nonconstant denominator")
        if not pole_radius > 1:
            raise PoleError(f"pole radius {pole_radius} <= 1: T-image not analytic on the closed disk")
        self.num = num
        self.den = den
        self.pole_radius = pole_radius
        self._coeffs: list[GaussianRational] = []

    @classmethod
    def from_poly(cls, p: Poly) -> RationalElement:
        return cls(p, Poly([1]))

    def __repr__(self):
        return f"RationalElement(num={self.num!r}, den={self.den!r}, pole_radius={self.pole_radius})"

    @property
    def t_image(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def coefficients(self, n_terms: int) -> list[GaussianRational]:
        if len(self._coeffs) < n_terms:
            self._coeffs = series_quotient(self.num, self.den, max(n_terms, 2 * len(self._coeffs)))
        return self._coeffs[:n_terms]

    @property
    def cauchy_radius(self) -> float:
        return (1 + self.pole_radius) / 2

    @cached_property
    def decay(self) -> Decay:
        if self.is_polynomial:
            coeffs = self.coefficients(self.num.degree + 1)
            return _finite_decay(coeffs)
        rho = self.cauchy_radius
        upper = self.num.abs_coeff_sum(rho) * (1 + _SLACK)
        lower = _min_modulus_on_circle(self.den, rho)
        return Decay(upper / lower, 1 / rho)


def _finite_decay(coeffs: Sequence[GaussianRational]) -> Decay:
    deg = len(coeffs) - 1
    while deg >= 0 and not coeffs[deg]:
        deg -= 1
    if deg < 0:
        return Decay(0.0, 0.0, -1)
    peak = max(math.sqrt(float(c.abs2())) for c in coeffs[: deg + 1])
    return Decay(peak * (1 + _SLACK), 1.0, deg)


@dataclass(frozen=True)
class TruncatedSeries:
    """Known coefficients ``coeffs`` plus ``|f^(n)| <= C r**n`` for ``n >= len(coeffs)``."""

    coeffs: tuple[GaussianRational, ...]
    tail_constant: float
    tail_ratio: float

    def __post_init__(self):
        if not 0 <= self.tail_ratio < 1:
            raise ValueError("tail ratio must lie in [0, 1)")

    @cached_property
    def decay(self) -> Decay:
        r = self.tail_ratio
        if r == 0:
            if self.tail_constant:
                raise ValueError("zero ratio with a nonzero tail constant")
            return _finite_decay(self.coeffs)
        c = self.tail_constant
        for n, a in enumerate(self.coeffs):
            if a:
                c = max(c, math.sqrt(float(a.abs2())) / r**n)
        return Decay(c * (1 + _SLACK), r)


HardyElement = Union[CoefficientPoly, RationalElement, TruncatedSeries]


def decay_of(f: HardyElement) -> Decay:
    if isinstance(f, CoefficientPoly):
        return _finite_decay(f.coeffs)
    return f.decay


def known_terms(f: HardyElement) -> int | None:
    """Number of exactly known coefficients; ``None`` if unlimited."""
    if isinstance(f, TruncatedSeries):
        return len(f.coeffs) if f.tail_ratio else None
    return None


def finite_degree(f: HardyElement) -> int | None:
    return decay_of(f).degree


def coefficient_stream(f: HardyElement, n_terms: int) -> list[GaussianRational]:
    """Exact ``f^(0), ..., f^(n_terms-1)``."""
    if isinstance(f, CoefficientPoly):
        return [f[n] for n in range(n_terms)]
    if isinstance(f, RationalElement):
        return f.coefficients(n_terms)
    known = known_terms(f)
    if known is not None and n_terms > known:
        raise ValueError(f"only {known} coefficients are known")
    return [f.coeffs[n] if n < len(f.coeffs) else ZERO for n in range(n_terms)]


def _usable_terms(f: HardyElement, n: int) -> int:
    """Index of the last summed term: ``n``, extended to the degree of
    finite elements and capped by the known prefix of truncated ones."""
    deg = finite_degree(f)
    if deg is not None:
        return max(n, deg)
    known = known_terms(f)
    if known is not None:
        return min(n, known - 1)
    return n


# -- the unitary map T -----------------------------------------------------------


def t_transform(p: CoefficientPoly) -> Poly:
    """z^(n) -> t**n."""
    return Poly(p.coeffs)


def t_inverse(q: Poly) -> CoefficientPoly:
    return CoefficientPoly(q.coeffs)


def disk_inner_product(p: Poly, q: Poly) -> GaussianRational:
    """H2(disk) inner product of polynomials: the constant term of
    ``p(t) * conj(q(1/conj(t)))`` on the unit circle."""
    if not p or not q:
        return ZERO
    d = q.degree
    reflected = Poly([q[d - k].conj() for k in range(d + 1)])
    return (p * reflected)[d]


# -- inner products ------------------------------------------------------------


def inner_product(f: HardyElement, g: HardyElement, n: int = DEFAULT_N) -> EvalBound:
    """``<f, g> = sum_n f^(n) * conj(g^(n))`` with a certified tail bound.

    Exact (``result.exact`` set, zero tail) when both elements have finitely
    many coefficients.
    """
    df, dg = decay_of(f), decay_of(g)
    degs = [d for d in (df.degree, dg.degree) if d is not None]
    if degs:
        last = min(degs)
        if known_terms(f) is None and known_terms(g) is None:
            a = coefficient_stream(f, last + 1)
            b = coefficient_stream(g, last + 1)
            return _from_exact(_dot_conj(a, b))
    last = min(_usable_terms(f, n), _usable_terms(g, n))
    a = coefficient_stream(f, last + 1)
    b = coefficient_stream(g, last + 1)
    tail = _tail_of_product(df, dg, last + 1)
    return _from_exact(_dot_conj(a, b), tail)


def _dot_conj(a, b) -> GaussianRational:
    acc = ZERO
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y.conj()
    return acc


def norm(f: HardyElement, n: int = DEFAULT_N) -> tuple[float, float]:
    """Certified enclosure ``(low, high)`` of the norm of ``f``."""
    sq = inner_product(f, f, n)
    v = sq.value.real
    return math.sqrt(max(v - sq.abs_error, 0.0)), math.sqrt(v + sq.abs_error)


# -- the reproducing kernel ---------------------------------------------------------


def basis_bound_constant(z, rho: float = DEFAULT_RHO) -> float:
    """Cauchy bound ``max_{|t|=rho} |G_z(t)|``, so that ``|z^(n)| <= M rho**-n``."""
    p = point(z)
    if p.x < 0:
        raise ValueError(f"{p} is not in the right half-lattice")
    if not 0 < rho < SQRT2:
        raise ValueError("basis radius must lie in (0, sqrt 2)")
    s = rho / SQRT2
    return (1 + rho) ** p.x * ((1 + s) / (1 - s)) ** abs(p.y) * (1 + _SLACK)


def _basis_decay(z, rho: float) -> Decay:
    p = point(z)
    if p.y == 0:
        # G_z is the polynomial (1+t)**x
        return Decay(float(math.comb(p.x, p.x // 2)), 1.0, p.x)
    return Decay(basis_bound_constant(p, rho), 1 / rho)


def _require_right_half(p: LatticePoint) -> None:
    if p.x < 0:
        raise ValueError(f"{p} is not in the right half-lattice")


def kernel_element(w) -> RationalElement:
    """``K_w`` as a rational element: its T-image is ``G_{conj w}``."""
    p = point(w)
    _require_right_half(p)
    g = generating_function(p.conj())
    return RationalElement(g.num, g.den)


def kernel_eval(w, z, n: int = DEFAULT_N, rho: float = DEFAULT_RHO) -> EvalBound:
    """``K_w(z) = sum_n z^(n) conj(w^(n))``, truncated after ``n`` with a Cauchy tail bound."""
    pw, pz = point(w), point(z)
    _require_right_half(pw)
    _require_right_half(pz)
    zv = basis_values(pz, n)
    wv = basis_values(pw, n)
    tail = _tail_of_product(_basis_decay(pz, rho), _basis_decay(pw, rho), n + 1)
    return _from_exact(_dot_conj(zv, wv), tail)


@dataclass(frozen=True)
class BoundMatrix:
    """Matrix of values with entrywise certified error bounds."""

    values: np.ndarray
    errors: np.ndarray

    def __getitem__(self, ij) -> EvalBound:
        i, j = ij
        return EvalBound(complex(self.values[i, j]), float(self.errors[i, j]))

    @property
    def shape(self):
        return self.values.shape

    def to_json(self) -> list[list[dict]]:
        n, m = self.values.shape
        return [[self[i, j].to_json() for j in range(m)] for i in range(n)]


def kernel_gram(points: Sequence, n: int = DEFAULT_N, rho: float = DEFAULT_RHO) -> BoundMatrix:
    """``G[i, j] = K_{p_j}(p_i)``."""
    pts = [point(p) for p in points]
    k = len(pts)
    vals = np.zeros((k, k), dtype=complex)
    errs = np.zeros((k, k))
    for i in range(k):
        for j in range(i, k):
            e = kernel_eval(pts[j], pts[i], n, rho)
            vals[i, j] = e.value
            errs[i, j] = e.abs_error
            vals[j, i] = e.value.conjugate()
            errs[j, i] = e.abs_error
    return BoundMatrix(vals, errs)


# -- evaluation ------------------------------------------------------------------


def evaluate_at_lattice(f: HardyElement, z, n: int = DEFAULT_N, rho: float = DEFAULT_RHO) -> EvalBound:
    """``f(z) = sum_n f^(n) z^(n)``: exact partial sum plus a certified tail.

    The tail uses ``|f^(n)| <= C r**n`` and ``|z^(n)| <= M_z(rho) rho**-n``.
    """
    p = point(z)
    _require_right_half(p)
    last = _usable_terms(f, n)
    a = coefficient_stream(f, last + 1)
    zv = basis_values(p, last)
    acc = ZERO
    for x, y in zip(a, zv):
        if x and y:
            acc = acc + x * y
    tail = _tail_of_product(decay_of(f), _basis_decay(p, rho), last + 1)
    return _from_exact(acc, tail)


def rational_coefficients(f: RationalElement, n: int) -> tuple[CoefficientPoly, Decay]:
    """Exact ``f^(0..n)`` by long division, with the Cauchy decay certificate."""
    return CoefficientPoly(f.coefficients(n + 1)), f.decay


# -- positivity ----------------------------------------------------------------


@dataclass(frozen=True)
class PSDResult:
    psd: bool
    min_eigenvalue: float
    trace: float

    def __bool__(self):
        return self.psd


def _as_arrays(g) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(g, BoundMatrix):
        return np.asarray(g.values, dtype=complex), np.asarray(g.errors, dtype=float)
    a = np.asarray(g, dtype=complex)
    return a, np.zeros(a.shape)


def psd_check(g, tol: float = 1e-9) -> PSDResult:
    """Minimum eigenvalue test ``lambda_min >= -tol * max(1, trace)``.

    The eigenvalues come from ``numpy.linalg.eigvalsh`` on the real
    symmetric embedding ``[[A, -B], [B, A]]`` of ``G = A + iB``.
    """
    a, e = _as_arrays(g)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonHermitianError("Gram matrix must be square")
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    asym = np.abs(a - a.conj().T)
    if np.any(asym > e + e.T + 1e-12 * scale):
        raise NonHermitianError("matrix is not Hermitian within its error bounds")
    h = (a + a.conj().T) / 2
    re, im = h.real, h.imag
    emb = np.block([[re, -im], [im, re]])
    eig = np.linalg.eigvalsh(emb) if emb.size else np.zeros(1)
    lam = float(eig.min())
    trace = float(np.trace(re))
    return PSDResult(lam >= -tol * max(1.0, trace), lam, trace)

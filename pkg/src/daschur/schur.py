"""Schur-class certification, Blaschke factors and the rectangle interpolation problem.

A candidate ``s`` is handled through its T-image ``s0 = num/den``.  It is a
Schur function iff ``P = |den|**2 - |num|**2 >= 0`` on the unit circle, and it
is inner (an isometric convolution multiplier) iff ``P`` vanishes identically.
``P`` is a Laurent polynomial with exact Gaussian-rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .basis import CoefficientPoly
from .exact import ONE, ZERO, GaussianRational, alpha, to_float
from .hardy import (
    DEFAULT_N,
    DEFAULT_RHO,
    BoundMatrix,
    Decay,
    HardyElement,
    RationalElement,
    TruncatedSeries,
    _basis_decay,
    _tail_of_product,
    basis_values,
    coefficient_stream,
    decay_of,
    known_terms,
)
from .lattice import LatticePoint, point
from .polynomial import Poly

DEFAULT_SAMPLES = 4096
MAX_SAMPLES = 2**20

EXACT_INNER = "exact-inner"
SCHUR_CERTIFIED = "schur-certified"
NOT_SCHUR = "not-schur"
INDETERMINATE = "indeterminate"


def _trusted_element(num: Poly, den: Poly, pole_radius: float) -> RationalElement:
    # pole_radius already certified for a denominator dividing ``den``'s roots
    obj = RationalElement.__new__(RationalElement)
    obj.num, obj.den, obj.pole_radius = num, den, pole_radius
    obj._coeffs = []
    return obj


@dataclass(frozen=True)
class SchurCandidate:
    element: RationalElement

    @classmethod
    def from_t_image(cls, num, den=(1,)) -> SchurCandidate:
        num = num if isinstance(num, Poly) else Poly(num)
        den = den if isinstance(den, Poly) else Poly(den)
        return cls(RationalElement(num, den))

    @property
    def num(self) -> Poly:
        return self.element.num

    @property
    def den(self) -> Poly:
        return self.element.den

    def t_image(self, t):
        """Float value of ``num/den`` at a point or an array of points."""
        t = np.asarray(t, dtype=complex)
        v = np.polyval(self.num.to_complex()[::-1], t) / np.polyval(self.den.to_complex()[::-1], t)
        return complex(v) if v.ndim == 0 else v


@dataclass(frozen=True)
class InnerCertificate:
    kind: str
    witness: GaussianRational | None = None
    witness_modulus: float | None = None
    samples: int | None = None
    lipschitz: float | None = None
    method: str | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.witness is not None:
            t = to_float(self.witness)
            out["witness"] = {
                "t": str(self.witness),
                "theta": math.atan2(t.imag, t.real),
                "modulus": self.witness_modulus,
            }
        if self.samples is not None:
            out["samples"] = self.samples
        if self.lipschitz is not None:
            out["lipschitz"] = self.lipschitz
        if self.method is not None:
            out["method"] = self.method
        return out


# -- boundary defect polynomial -------------------------------------------------


def boundary_defect(s: SchurCandidate) -> dict[int, GaussianRational]:
    """Laurent coefficients of ``|den(t)|**2 - |num(t)|**2`` on ``|t| = 1``."""
    a = s.den.laurent_abs2()
    b = s.num.laurent_abs2()
    out = {}
    for k in set(a) | set(b):
        c = a.get(k, ZERO) - b.get(k, ZERO)
        if c:
            out[k] = c
    return out


def _defect_at(s: SchurCandidate, t: GaussianRational) -> Fraction:
    """Exact ``|den(t)|**2 - |num(t)|**2`` at a Gaussian-rational point."""
    return s.den(t).abs2() - s.num(t).abs2()


def _circle_point(u: Fraction) -> GaussianRational:
    """``(1 + iu)/(1 - iu)``, an exact point of the unit circle with angle ``2*atan(u)``."""
    return GaussianRational(1, u) / GaussianRational(1, -u)


def _exact_witness_near(s: SchurCandidate, theta: float) -> GaussianRational | None:
    theta = math.remainder(theta, 2 * math.pi)
    if abs(abs(theta) - math.pi) < 1e-9:
        candidates = [GaussianRational(-1)]
    else:
        u = math.tan(theta / 2)
        candidates = [_circle_point(Fraction(u).limit_denominator(d)) for d in (10**3, 10**6, 10**9)]
    for t in candidates:
        if _defect_at(s, t) < 0:
            return t
    return None


def _not_schur(s: SchurCandidate, t: GaussianRational, **kw) -> InnerCertificate:
    mod = math.sqrt(float(s.num(t).abs2() / s.den(t).abs2()))
    return InnerCertificate(NOT_SCHUR, witness=t, witness_modulus=mod, **kw)


def _sample_defect(coeffs: dict[int, GaussianRational], m: int) -> np.ndarray:
    deg = max(coeffs, default=0)
    pos = np.zeros(deg + 1, dtype=complex)
    for k, c in coeffs.items():
        if k >= 0:
            pos[k] = to_float(c)
    pos[0] = pos[0] / 2
    e = np.exp(2j * np.pi * np.arange(m) / m)
    return 2 * np.polyval(pos[::-1], e).real


def schur_check(
    s: SchurCandidate,
    samples: int = DEFAULT_SAMPLES,
    max_samples: int = MAX_SAMPLES,
) -> InnerCertificate:
    """Certify ``sup |s0| <= 1`` on the closed disk.

    1. Exact: ``P == 0`` coefficientwise gives ``exact-inner``.
    2. Sampling: ``P`` at ``M`` equispaced angles; ``min >= L*pi/M`` with
       ``L = sum |k| |c_k|`` certifies positivity, a negative sample yields an
       exact witness on the circle.
    3. Otherwise (P touches zero) an exact sign analysis of ``P`` after the
       substitution ``t = (1+iu)/(1-iu)``, with a squarefree decomposition and
       Sturm sequences over Q.
    """
    coeffs = boundary_defect(s)
    if not coeffs:
        return InnerCertificate(EXACT_INNER, method="exact")
    lip = sum(abs(k) * abs(to_float(c)) for k, c in coeffs.items())
    scale = sum(abs(to_float(c)) for c in coeffs.values())
    slack = 1e-12 * scale
    m = samples
    vals = _sample_defect(coeffs, m)
    j = int(np.argmin(vals))
    if vals[j] < -slack:
        w = _exact_witness_near(s, 2 * math.pi * j / m)
        if w is not None:
            return _not_schur(s, w, samples=m)
    if vals[j] - slack >= lip * math.pi / m:
        return InnerCertificate(SCHUR_CERTIFIED, samples=m, lipschitz=lip, method="sampling")

    verdict, witness = _exact_sign_analysis(s, coeffs)
    if verdict:
        return InnerCertificate(SCHUR_CERTIFIED, method="exact-sturm")
    if witness is not None:
        return _not_schur(s, witness, method="exact-sturm")
    # negative somewhere but no witness found yet: refine the sampling
    while m < max_samples:
        m *= 2
        vals = _sample_defect(coeffs, m)
        j = int(np.argmin(vals))
        if vals[j] < 0:
            w = _exact_witness_near(s, 2 * math.pi * j / m)
            if w is not None:
                return _not_schur(s, w, samples=m)
    return InnerCertificate(INDETERMINATE, samples=m, lipschitz=lip)


# exact real-polynomial toolkit (coefficient lists of Fractions, low degree first)


def _rtrim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _rderiv(p: list) -> list:
    return _rtrim([k * p[k] for k in range(1, len(p))])


def _rdivmod(a: list, b: list) -> tuple[list, list]:
    a = _rtrim(a)
    b = _rtrim(b)
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, bi in enumerate(b):
                r[k + i] -= c * bi
    return _rtrim(q), _rtrim(r[: len(b) - 1])


def _rgcd(a: list, b: list) -> list:
    a, b = _rtrim(a), _rtrim(b)
    while b:
        a, b = b, _rdivmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _reval(p: list, u: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * u + c
    return acc


def _sign_changes(seq) -> int:
    signs = [s for s in seq if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _count_real_roots(p: list) -> int:
    """Distinct real roots of ``p`` (Sturm's theorem over the whole line)."""
    p = _rtrim(p)
    if len(p) <= 1:
        return 0
    seq = [p, _rderiv(p)]
    while seq[-1] and len(seq[-1]) > 1:
        r = _rdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    at_pos = [q[-1] for q in seq]
    at_neg = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def _odd_multiplicity_part(p: list) -> list:
    """Product of the factors of odd multiplicity in the squarefree (Yun) decomposition."""
    p = _rtrim(p)
    dp = _rderiv(p)
    a = _rgcd(p, dp)
    b = _rdivmod(p, a)[0]
    c = _rdivmod(dp, a)[0]
    d = [x - y for x, y in _zip_longest(c, _rderiv(b))]
    out = [Fraction(1)]
    i = 1
    while len(_rtrim(b)) > 1:
        a = _rgcd(b, d)
        if i % 2 == 1:
            out = _rmul(out, a)
        b = _rdivmod(b, a)[0]
        c = _rdivmod(d, a)[0]
        d = [x - y for x, y in _zip_longest(c, _rderiv(b))]
        i += 1
    return _rtrim(out)


def _zip_longest(a: list, b: list):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def _rmul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _cayley_real_poly(coeffs: dict[int, GaussianRational]) -> list:
    """``(1+u**2)**m * P(theta)`` with ``t = (1+iu)/(1-iu)``, as a real polynomial in ``u``."""
    m = max(abs(k) for k in coeffs)
    plus = Poly([ONE, GaussianRational(0, 1)])
    minus = Poly([ONE, GaussianRational(0, -1)])
    total = Poly()
    for k, c in coeffs.items():
        total = total + (plus ** (m + k) * minus ** (m - k)) * c
    if any(c.im for c in total.coeffs):
        raise ArithmeticError("boundary defect is not real on the circle")
    return _rtrim([c.re for c in total.coeffs])


def _exact_sign_analysis(s: SchurCandidate, coeffs) -> tuple[bool, GaussianRational | None]:
    """``(True, None)`` if ``P >= 0`` on the circle; ``(False, witness-or-None)`` otherwise."""
    r = _cayley_real_poly(coeffs)
    if not r:
        return True, None
    odd = _odd_multiplicity_part(r)
    if _count_real_roots(odd) == 0:
        # constant sign away from even-multiplicity roots
        for u in range(len(r) + 1):
            v = _reval(r, Fraction(u))
            if v:
                if v > 0:
                    return True, None
                return False, _circle_point(Fraction(u))
    # sign changes: look next to numerically located real roots
    roots = np.roots([float(c) for c in reversed(r)])
    for root in roots:
        if abs(root.imag) > 1e-6:
            continue
        for delta in (1e-2, 1e-4, 1e-6, 1e-8):
            for u in (root.real - delta, root.real + delta):
                q = Fraction(u).limit_denominator(10**12)
                if _reval(r, q) < 0:
                    return False, _circle_point(q)
    return False, None


# -- multipliers ---------------------------------------------------------------


def _product_decay(a: Decay, b: Decay) -> Decay:
    """Decay certificate of a Cauchy product of two coefficient streams."""
    if a.degree is not None and b.degree is not None:
        return Decay(a.constant * b.constant * (min(a.degree, b.degree) + 1), 1.0, a.degree + b.degree)
    if b.degree is not None:
        a, b = b, a
    if a.degree is not None:
        # |c_n| <= C_a C_b sum_{j <= deg a} r_b**(n-j)
        r = b.ratio
        return Decay(a.constant * b.constant * sum(r**-j for j in range(a.degree + 1)) * (1 + 1e-12), r)
    hi, lo = max(a.ratio, b.ratio), min(a.ratio, b.ratio)
    if lo < hi * (1 - 1e-9):
        return Decay(a.constant * b.constant / (1 - lo / hi) * (1 + 1e-12), hi)
    # (n+1) hi**n <= K r**n with r = sqrt(hi)
    r = math.sqrt(hi)
    u = hi / r
    n_peak = max(0, int(-1 / math.log(u)))
    k = max((n + 1) * u**n for n in range(n_peak + 2))
    return Decay(a.constant * b.constant * k * (1 + 1e-12), r)


def multiplier_apply(s: SchurCandidate, f: HardyElement, n: int = DEFAULT_N) -> HardyElement:
    """``s (.) f``; exact for polynomial or rational ``f`` (the T-images multiply)."""
    el = s.element
    if isinstance(f, CoefficientPoly):
        num = el.num * f.t_image()
        q, r = divmod(num, el.den)
        if not r:
            # the denominator cancels: the product is a polynomial
            return CoefficientPoly(q.coeffs)
        return _trusted_element(num, el.den, el.pole_radius)
    if isinstance(f, RationalElement):
        return _trusted_element(el.num * f.num, el.den * f.den, min(el.pole_radius, f.pole_radius))
    known = known_terms(f)
    n_terms = n + 1 if known is None else min(n + 1, known)
    a = el.coefficients(n_terms)
    b = coefficient_stream(f, n_terms)
    out = []
    for k in range(n_terms):
        acc = ZERO
        for j in range(k + 1):
            if a[j] and b[k - j]:
                acc = acc + a[j] * b[k - j]
        out.append(acc)
    d = _product_decay(el.decay, decay_of(f))
    return TruncatedSeries(tuple(out), d.constant, d.ratio)


def schur_kernel_gram(
    s: SchurCandidate,
    points: Sequence,
    n: int = DEFAULT_N,
    rho: float = DEFAULT_RHO,
) -> BoundMatrix:
    """``G[i, j] = K^s_{p_j}(p_i) = sum_k p_i^(k) conj(p_j^(k)) - S_k(p_i) conj(S_k(p_j))``.

    ``S_k = Z**k s`` has coefficients shifted by ``k``; everything is
    truncated at index ``n``, which makes ``G = B (I - T T^*) B^*`` with ``T``
    the lower-triangular Toeplitz section of ``s``.
    """
    pts = [point(p) for p in points]
    for p in pts:
        if p.x < 0:
            raise ValueError(f"{p} is not in the right half-lattice")
    el = s.element
    shat = np.array([to_float(c) for c in el.coefficients(n + 1)], dtype=complex)
    b = np.array([[to_float(v) for v in basis_values(p, n)] for p in pts], dtype=complex)
    toep = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        toep[k:, k] = shat[: n + 1 - k]
    sv = b @ toep
    vals = b @ b.conj().T - sv @ sv.conj().T

    sv_abs = np.abs(b) @ np.abs(toep)
    ds = el.decay
    decays = [_basis_decay(p, rho) for p in pts]
    k_pts = len(pts)
    # e[i][k] bounds |S_k(p_i) - truncated S_k(p_i)|
    e = [[_shift_bound(ds, d, k, n - k + 1) for k in range(n + 1)] for d in decays]
    errs = np.zeros((k_pts, k_pts))
    for i in range(k_pts):
        for j in range(k_pts):
            total = _tail_of_product(decays[i], decays[j], n + 1)
            for k in range(n + 1):
                ei, ej = e[i][k], e[j][k]
                if ei or ej:
                    total += ei * abs(sv[j, k]) + abs(sv[i, k]) * ej + ei * ej
            total += _omitted_shifts(ds, decays[i], decays[j], n)
            total += 1e-13 * (np.abs(b[i]) @ np.abs(b[j]) + sv_abs[i] @ sv_abs[j])
            errs[i, j] = total
    return BoundMatrix(vals, errs)


def _shift_bound(ds: Decay, dz: Decay, k: int, start: int) -> float:
    """Upper bound for ``sum_{j >= start} |s^(j)| |z^(j+k)|``."""
    if dz.degree is not None:
        if start + k > dz.degree:
            return 0.0
        return dz.constant * ds.weighted_tail(start, 1.0)
    return dz.constant * dz.ratio**k * ds.weighted_tail(start, dz.ratio)


def _omitted_shifts(ds: Decay, dz: Decay, dw: Decay, n: int) -> float:
    """Upper bound for ``sum_{k > n} |S_k(z)| |S_k(w)|``."""
    degs = [d.degree for d in (dz, dw) if d.degree is not None]
    if degs:
        return sum(_shift_bound(ds, dz, k, 0) * _shift_bound(ds, dw, k, 0) for k in range(n + 1, min(degs) + 1))
    q = dz.ratio * dw.ratio
    return (
        dz.constant * dw.constant * ds.weighted_tail(0, dz.ratio) * ds.weighted_tail(0, dw.ratio)
        * q ** (n + 1) / (1 - q) * (1 + 1e-12)
    )


# -- Blaschke factors and the rectangle problem ---------------------------------------


def _check_sign(sign: str) -> str:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def _other(sign: str) -> str:
    return "-" if sign == "+" else "+"


def blaschke_pm(sign: str) -> SchurCandidate:
    """Blaschke factor with T-image ``alpha_mp (1 + 2 alpha_pm t)/(1 + alpha_pm t)``,
    which simplifies to ``(alpha_mp + t)/(1 + alpha_pm t)``."""
    sign = _check_sign(sign)
    a, b = alpha(sign), alpha(_other(sign))
    return SchurCandidate(RationalElement(Poly([b, ONE]), Poly([ONE, a])))


@dataclass(frozen=True)
class InterpolationProblem:
    """Vanishing on the rectangle spanned by 0 and ``lam`` inside the right half-lattice."""

    lam: LatticePoint
    rectangle: tuple[LatticePoint, ...] = field(init=False, repr=False)

    def __init__(self, lam):
        lam = point(lam)
        if lam.x < 0:
            raise ValueError(f"lambda = {lam} must have nonnegative real part")
        object.__setattr__(self, "lam", lam)
        step = 1 if lam.y >= 0 else -1
        rect = tuple(LatticePoint(x, y) for y in range(0, lam.y + step, step) for x in range(lam.x + 1))
        object.__setattr__(self, "rectangle", rect)

    @property
    def sign(self) -> str:
        return "+" if self.lam.y >= 0 else "-"

    @property
    def degree(self) -> int:
        """Number of zeros of the generator (with multiplicity) in the disk."""
        return self.lam.x + abs(self.lam.y) + 1

    def contains(self, z) -> bool:
        p = point(z)
        lam = self.lam
        return 0 <= p.x <= lam.x and abs(p.y) <= abs(lam.y) and p.y * lam.y >= 0

    def generator_t_image(self) -> Poly:
        """``t**(Re lam + 1) * (t + alpha_mp)**|Im lam|``."""
        root = alpha(_other(self.sign))
        return Poly.monomial(self.lam.x + 1) * Poly([root, ONE]) ** abs(self.lam.y)


def blaschke_lambda(prob: InterpolationProblem) -> SchurCandidate:
    """``z^(Re lam + 1) (.) B_pm^(.|Im lam|)`` with unimodular constant 1."""
    b = blaschke_pm(prob.sign)
    k = abs(prob.lam.y)
    num = Poly.monomial(prob.lam.x + 1) * b.num**k
    den = b.den**k
    return SchurCandidate(_trusted_element(num, den, b.element.pole_radius) if k else RationalElement(num, den))


def polynomial_generator(prob: InterpolationProblem) -> CoefficientPoly:
    return CoefficientPoly(prob.generator_t_image().coeffs)


@dataclass(frozen=True)
class Membership:
    member: bool
    quotient: CoefficientPoly | None

    def __bool__(self):
        return self.member


def ideal_membership(p: CoefficientPoly, prob: InterpolationProblem) -> Membership:
    """Is ``p`` a convolution multiple of the generator?  Exact division of T-images."""
    q, r = divmod(p.t_image(), prob.generator_t_image())
    if r:
        return Membership(False, None)
    return Membership(True, CoefficientPoly(q.coeffs))


def solve_basic_interpolation(prob: InterpolationProblem, n: int) -> list[CoefficientPoly]:
    """Basis ``generator (.) z^(k)``, ``0 <= k <= n - degree``, of the polynomial
    solutions of degree at most ``n``."""
    g = prob.generator_t_image()
    return [CoefficientPoly(g.shift(k).coeffs) for k in range(n - prob.degree + 1)]

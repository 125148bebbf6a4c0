from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from daschur.exact import ONE, GaussianRational, alpha
from daschur.polynomial import (
    Poly,
    RationalFunction,
    binomial_series,
    roots_outside_closed_disk,
    series_quotient,
)
from strategies import gaussian

polys = st.lists(gaussian, max_size=6).map(Poly)


@given(polys, polys)
def test_divmod_identity(a, b):
    if not b:
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys, st.complex_numbers(max_magnitude=2, allow_nan=False))
def test_mul_is_evaluation_homomorphism(a, b, t):
    assert abs((a * b)(t) - a(t) * b(t)) <= 1e-8 * (1 + abs(a(t)) * abs(b(t)))


def test_trim_and_degree():
    assert Poly([1, 2, 0, 0]).degree == 1
    assert Poly([]).degree == -1
    assert Poly([0]) == Poly([])


def test_scale_and_shift():
    p = Poly([1, 2, 3])
    assert p.scale(Fraction(1, 2)) == Poly([1, 1, Fraction(3, 4)])
    assert p.shift(2) == Poly([0, 0, 1, 2, 3])


def test_geometric_series():
    got = series_quotient(Poly([1]), Poly([1, Fraction(-1, 2)]), 5)
    assert got == [GaussianRational(Fraction(1, 2**k)) for k in range(5)]


def test_binomial_series_negative_exponent():
    # (1 + t)^-1 = 1 - t + t^2 - ...
    assert binomial_series(-1, ONE, 4) == [GaussianRational(c) for c in (1, -1, 1, -1)]


@pytest.mark.parametrize(
    "coeffs, outside",
    [
        ([1, Fraction(-1, 2)], True),  # root at 2
        ([1, -1], False),  # root on the circle
        ([1, -2], False),  # root at 1/2
        ([ONE, alpha("+")], True),  # root modulus sqrt(2)
        ([2, 0, 1], True),  # roots +-i sqrt(2)
        ([1, 0, 1], False),  # roots +-i
    ],
)
def test_schur_cohn(coeffs, outside):
    assert roots_outside_closed_disk(Poly(coeffs)) is outside


@given(st.lists(st.complex_numbers(min_magnitude=0.2, max_magnitude=3, allow_nan=False), min_size=1, max_size=4))
def test_schur_cohn_matches_numpy(roots):
    if any(abs(abs(r) - 1) < 1e-3 for r in roots):
        return
    coeffs = np.poly(roots)[::-1]
    p = Poly(GaussianRational(Fraction(c.real).limit_denominator(10**9), Fraction(c.imag).limit_denominator(10**9)) for c in coeffs)
    est = np.roots(p.to_complex()[::-1])
    if any(abs(abs(r) - 1) < 1e-6 for r in est):
        return
    assert roots_outside_closed_disk(p) == all(abs(r) > 1 for r in est)


def test_laurent_abs2():
    # |1 + t|^2 = t^-1 + 2 + t on the circle
    d = Poly([1, 1]).laurent_abs2()
    assert {k: v for k, v in d.items() if v} == {-1: ONE, 0: GaussianRational(2), 1: ONE}


def test_rational_function_taylor():
    r = RationalFunction(Poly([0, 1]), Poly([1, -1]))
    assert r.taylor(4) == [GaussianRational(c) for c in (0, 1, 1, 1)]
    assert abs(r(0.5) - 1.0) < 1e-15

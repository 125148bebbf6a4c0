from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from daschur.basis import (
    BasisTable,
    CoefficientPoly,
    basis_poly,
    basis_poly_recursive,
    basis_values,
    coefficients_from_lattice,
    convolve,
    conjugate_basis_identity_check,
    generating_function,
    generating_function_eval,
)
from daschur.errors import NotAnalyticError, WindowError
from daschur.exact import ONE, ZERO, GaussianRational, alpha, parse_gaussian
from daschur.lattice import LatticeFunction, LatticePoint, Window, delta_x, is_discrete_analytic
from daschur.polynomial import Poly
from strategies import coefficient_polys

W = Window(-3, 4, -3, 4)
half = Fraction(1, 2)


def z_of(p: LatticePoint) -> GaussianRational:
    return p.as_gaussian()


@pytest.mark.parametrize(
    "n, fn",
    [
        (0, lambda z: ONE),
        (1, lambda z: z),
        (2, lambda z: (z * z - z) / 2),
    ],
)
def test_low_order_closed_forms(n, fn):
    for p in W:
        assert basis_poly(n)(p.x, p.y) == fn(z_of(p))


def test_value_at_i():
    assert basis_poly(2)(0, 1) == parse_gaussian("-1/2-1/2i")
    assert basis_poly_recursive(2, W)(LatticePoint(0, 1)) == parse_gaussian("-1/2-1/2i")


@pytest.mark.parametrize("n", range(0, 9))
def test_three_routes_agree(n):
    rec = basis_poly_recursive(n, W)
    sym = basis_poly(n).on_window(W)
    assert rec.equals(sym)
    for p in W:
        assert basis_values(p, n)[n] == sym(p)


@pytest.mark.parametrize("n", range(0, 13))
def test_basis_is_analytic(n):
    assert is_discrete_analytic(basis_poly(n).on_window(W)).analytic


def test_successive_differences():
    # delta_x z^(n+1) = z^(n)
    for n in range(8):
        d = delta_x(basis_poly(n + 1).on_window(W))
        assert d.equals(basis_poly(n).on_window(W))


def test_degree():
    assert [basis_poly(n).total_degree for n in range(6)] == [0, 1, 2, 3, 4, 5]


def test_nonnegative_integers_are_binomials():
    from math import comb

    for x in range(6):
        assert basis_values(LatticePoint(x, 0), 8) == tuple(GaussianRational(comb(x, n)) for n in range(9))


@pytest.mark.parametrize(
    "samples, expected",
    [
        ("z2basis", [0, 0, 1]),
        ("five", [5]),
        ("zsq", [0, 1, 2]),
    ],
)
def test_coefficients_from_lattice(samples, expected):
    w = Window(0, 4, -1, 1)
    f = {
        "z2basis": basis_poly(2).on_window(w),
        "five": LatticeFunction.constant(w, 5),
        "zsq": LatticeFunction.from_callable(w, lambda z: z * z),
    }[samples]
    assert coefficients_from_lattice(f, 4) == CoefficientPoly(expected)


def test_coefficients_need_room_and_analyticity():
    with pytest.raises(WindowError):
        coefficients_from_lattice(LatticeFunction.constant(Window(0, 2, 0, 1), 1), 5)
    with pytest.raises(NotAnalyticError):
        coefficients_from_lattice(LatticeFunction.from_callable(Window(0, 4, 0, 1), lambda z: z**3), 3)


@given(coefficient_polys(6))
def test_coefficient_roundtrip(p):
    w = Window(0, 7, -1, 1)
    assert coefficients_from_lattice(p.on_window(w), 7) == p


def test_convolution_examples():
    z1 = CoefficientPoly.basis(1)
    assert convolve(z1, z1) == CoefficientPoly.basis(2)
    one = CoefficientPoly([1])
    p = CoefficientPoly([3, 0, -1])
    assert convolve(one, p) == p
    assert convolve(CoefficientPoly([1, 1]), CoefficientPoly([1, -1])) == CoefficientPoly([1, 0, -1])
    assert z1.odot(CoefficientPoly.basis(2)) == CoefficientPoly.basis(3)


@given(coefficient_polys(4), coefficient_polys(4), coefficient_polys(4))
def test_convolution_ring_laws(a, b, c):
    assert convolve(a, b) == convolve(b, a)
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert convolve(a, b + c) == convolve(a, b) + convolve(a, c)


def test_convolution_is_not_pointwise():
    # z^(1) (.) z^(1) = z^(2) differs from the pointwise square z*z
    z = LatticePoint(2, 1)
    assert CoefficientPoly.basis(2)(z) != z.as_gaussian() ** 2


def test_generating_function_examples():
    assert generating_function(1).num == Poly([1, 1]) and generating_function(1).den == Poly([1])
    g = generating_function(LatticePoint(0, 1))
    assert g.num == Poly([ONE, alpha("+")]) and g.den == Poly([ONE, alpha("-")])
    for z in (0, 1, LatticePoint(2, -3), LatticePoint(-1, 2)):
        assert generating_function_eval(z, 0) == 1


@pytest.mark.parametrize("z", [LatticePoint(0, 0), LatticePoint(3, 0), LatticePoint(1, 2), LatticePoint(2, -2), LatticePoint(-2, 1)])
def test_generating_function_taylor_is_basis(z):
    assert generating_function(z).taylor(10) == list(basis_values(z, 9))


def test_generating_function_numeric():
    t = 0.3 + 0.2j
    z = LatticePoint(2, 1)
    expected = (1 + t) ** 2 * (1 + (0.5 + 0.5j) * t) / (1 + (0.5 - 0.5j) * t)
    assert abs(generating_function_eval(z, t) - expected) < 1e-14


def test_conjugate_identity():
    assert conjugate_basis_identity_check(1, Window(-2, 2, -2, 2))
    assert basis_poly(2)(0, -1).conj() == basis_poly(2)(0, 1)
    for n in range(13):
        assert conjugate_basis_identity_check(n, Window(-2, 2, -2, 2))
    with pytest.raises(WindowError):
        conjugate_basis_identity_check(2, Window(0, 1, 0, 2))


def test_basis_table_csv():
    text = BasisTable.build(2).to_csv(Window(0, 1, 0, 0))
    lines = text.splitlines()
    assert lines[0] == "n,x,y,re,im"
    assert "2,1,0,0.0,0.0" in lines
    assert len(lines) == 1 + 3 * 2


@given(coefficient_polys(5), st.integers(-3, 4), st.integers(-3, 4))
def test_coefficient_poly_value_matches_symbolic(p, x, y):
    expected = ZERO
    for n, c in enumerate(p.coeffs):
        expected = expected + c * basis_poly(n)(x, y)
    assert p(LatticePoint(x, y)) == expected

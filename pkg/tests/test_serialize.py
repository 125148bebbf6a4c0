from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from daschur.basis import CoefficientPoly
from daschur.errors import DomainError
from daschur.hardy import RationalElement, TruncatedSeries, kernel_element
from daschur.lattice import LatticePoint, Window
from daschur.schur import InterpolationProblem, blaschke_pm
from daschur.serialize import (
    coefficient_poly_from_json,
    coefficient_poly_to_json,
    dumps,
    format_point,
    hardy_element_from_json,
    hardy_element_to_json,
    lattice_function_from_json,
    lattice_function_to_json,
    parse_point,
    problem_from_json,
    problem_to_json,
)
from strategies import coefficient_polys


@pytest.mark.parametrize(
    "text, xy",
    [("1+0i", (1, 0)), ("2", (2, 0)), ("-i", (0, -1)), ("3-2i", (3, -2)), ("0+1i", (0, 1)), ("i", (0, 1)), ("-4+12i", (-4, 12))],
)
def test_parse_point(text, xy):
    assert parse_point(text) == LatticePoint(*xy)


@pytest.mark.parametrize("bad", ["1.5", "x", "1+i2", "", "1/2"])
def test_parse_point_rejects(bad):
    with pytest.raises(DomainError):
        parse_point(bad)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_point_roundtrip(x, y):
    p = LatticePoint(x, y)
    assert parse_point(format_point(p)) == p


@given(coefficient_polys(5))
def test_lattice_function_roundtrip(p):
    f = p.on_window(Window(-1, 2, 0, 1))
    back = lattice_function_from_json(json.loads(dumps(lattice_function_to_json(f))))
    assert back == f or back.equals(f)
    g = f.to_float()
    back = lattice_function_from_json(json.loads(dumps(lattice_function_to_json(g))))
    assert back.max_abs_diff(g) == 0


@given(coefficient_polys(6))
def test_coefficient_poly_roundtrip(p):
    assert coefficient_poly_from_json(json.loads(dumps(coefficient_poly_to_json(p)))) == p


@pytest.mark.parametrize(
    "element",
    [blaschke_pm("+").element, kernel_element(LatticePoint(1, 2)), RationalElement.from_poly(CoefficientPoly([1, 2]).t_image())],
    ids=["blaschke", "kernel", "poly"],
)
def test_rational_roundtrip(element):
    back = hardy_element_from_json(json.loads(dumps(hardy_element_to_json(element))))
    assert back.num == element.num and back.den == element.den


def test_truncated_roundtrip():
    s = TruncatedSeries(tuple(CoefficientPoly([1, 2]).coeffs), 0.25, 0.5)
    back = hardy_element_from_json(hardy_element_to_json(s))
    assert back == s


def test_problem_roundtrip():
    prob = InterpolationProblem(LatticePoint(2, -1))
    back, n = problem_from_json(problem_to_json(prob, 7))
    assert back.lam == prob.lam and n == 7


@pytest.mark.parametrize(
    "bad",
    [{"window": [0, 0, 0, 0]}, {"window": [0, 0, 0, 0], "values": [{"x": 0, "y": 0, "v": 1}]}, {"values": []}],
)
def test_malformed_lattice_function(bad):
    with pytest.raises(DomainError):
        lattice_function_from_json(bad)


def test_dumps_is_deterministic_and_strict():
    obj = {"a": 0.1, "b": [1, 2]}
    assert dumps(obj) == dumps(json.loads(dumps(obj)))
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})

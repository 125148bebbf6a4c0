"""JSON encodings shared by the library and the command line."""

from __future__ import annotations

import json
import math
import re
from typing import Any

from .basis import CoefficientPoly
from .errors import DomainError
from .exact import format_gaussian, parse_gaussian
from .hardy import HardyElement, RationalElement, TruncatedSeries
from .lattice import EXACT, FLOAT, LatticeFunction, LatticePoint, Window
from .polynomial import Poly
from .schur import InterpolationProblem

_POINT = re.compile(r"^\s*([+-]?\d+)\s*(?:([+-])\s*(\d*)\s*i)?\s*$")
_IMAG_POINT = re.compile(r"^\s*([+-]?)(\d*)\s*i\s*$")


def parse_point(text: str) -> LatticePoint:
    """``"x+yi"`` with integer parts; ``"2"``, ``"-i"``, ``"3-2i"`` also accepted."""
    m = _POINT.match(text)
    if m:
        x = int(m.group(1))
        if m.group(2) is None:
            return LatticePoint(x, 0)
        y = int(m.group(3) or "1")
        return LatticePoint(x, -y if m.group(2) == "-" else y)
    m = _IMAG_POINT.match(text)
    if m:
        y = int(m.group(2) or "1")
        return LatticePoint(0, -y if m.group(1) == "-" else y)
    raise DomainError(f"not a lattice point: {text!r}")


def format_point(p: LatticePoint) -> str:
    return str(p)


def _encode_scalar(v, mode: str):
    if mode == EXACT:
        return format_gaussian(v)
    c = complex(v)
    return [c.real, c.imag]


def _decode_scalar(v, mode: str):
    if mode == EXACT:
        if not isinstance(v, str):
            raise DomainError(f"exact values must be strings, got {v!r}")
        return parse_gaussian(v)
    if isinstance(v, str):
        return complex(parse_gaussian(v))
    if not (isinstance(v, list) and len(v) == 2):
        raise DomainError(f"float values must be [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


# -- lattice functions -------------------------------------------------------------


def lattice_function_to_json(f: LatticeFunction) -> dict:
    return {
        "window": f.window.as_list(),
        "mode": f.mode,
        "values": [{"x": p.x, "y": p.y, "v": _encode_scalar(f(p), f.mode)} for p in f.window],
    }


def lattice_function_from_json(obj: dict) -> LatticeFunction:
    try:
        window = Window(*[int(v) for v in obj["window"]])
        mode = obj.get("mode", EXACT)
        if mode not in (EXACT, FLOAT):
            raise DomainError(f"unknown mode {mode!r}")
        values = {LatticePoint(int(e["x"]), int(e["y"])): _decode_scalar(e["v"], mode) for e in obj["values"]}
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed lattice-function JSON: {exc}") from None
    return LatticeFunction(window, values, mode)


# -- coefficient polynomials and Hardy elements ----------------------------------------


def coefficient_poly_to_json(p: CoefficientPoly) -> dict:
    return {"basis": "z^(n)", "coeffs": [format_gaussian(c) for c in p.coeffs]}


def coefficient_poly_from_json(obj: dict) -> CoefficientPoly:
    if obj.get("basis", "z^(n)") != "z^(n)":
        raise DomainError(f"unsupported basis {obj.get('basis')!r}")
    try:
        return CoefficientPoly(parse_gaussian(c) for c in obj["coeffs"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed coefficient-poly JSON: {exc}") from None


def rational_element_to_json(r: RationalElement) -> dict:
    pr = r.pole_radius
    return {
        "num": [format_gaussian(c) for c in r.num.coeffs],
        "den": [format_gaussian(c) for c in r.den.coeffs],
        "pole_radius": pr if math.isfinite(pr) else None,
    }


def rational_element_from_json(obj: dict) -> RationalElement:
    try:
        num = Poly(parse_gaussian(c) for c in obj["num"])
        den = Poly(parse_gaussian(c) for c in obj["den"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed rational-element JSON: {exc}") from None
    pr = obj.get("pole_radius")
    if pr is None:
        pr = math.inf if den.degree == 0 else None
    return RationalElement(num, den, None if pr is None else float(pr))


def hardy_element_to_json(f: HardyElement) -> dict:
    if isinstance(f, CoefficientPoly):
        return coefficient_poly_to_json(f)
    if isinstance(f, RationalElement):
        return rational_element_to_json(f)
    if isinstance(f, TruncatedSeries):
        return {
            "coeffs": [format_gaussian(c) for c in f.coeffs],
            "tail_constant": f.tail_constant,
            "tail_ratio": f.tail_ratio,
        }
    raise TypeError(f"not a Hardy-space element: {f!r}")


def hardy_element_from_json(obj: dict) -> HardyElement:
    if "num" in obj:
        return rational_element_from_json(obj)
    if "tail_ratio" in obj:
        return TruncatedSeries(
            tuple(parse_gaussian(c) for c in obj["coeffs"]),
            float(obj["tail_constant"]),
            float(obj["tail_ratio"]),
        )
    return coefficient_poly_from_json(obj)


# -- interpolation problems -----------------------------------------------------------


def problem_to_json(prob: InterpolationProblem, n: int) -> dict:
    return {"lambda": {"x": prob.lam.x, "y": prob.lam.y}, "N": n}


def problem_from_json(obj: dict) -> tuple[InterpolationProblem, int]:
    try:
        lam = obj["lambda"]
        return InterpolationProblem(LatticePoint(int(lam["x"]), int(lam["y"]))), int(obj["N"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed problem JSON: {exc}") from None


def dumps(obj: Any) -> str:
    """Deterministic JSON text; floats use Python's shortest round-trip repr."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"

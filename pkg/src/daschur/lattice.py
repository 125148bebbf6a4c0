"""Functions on finite rectangular windows of the Gaussian-integer lattice.

Values are either exact (:class:`GaussianRational`, ``mode="exact"``) or
``complex`` (``mode="float"``).  Difference operators shrink the window;
everything is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from .errors import (
    NotAnalyticError,
    OriginMissingError,
    PathError,
    WindowError,
)
from .exact import GaussianRational, alpha, as_gaussian, to_float

EXACT = "exact"
FLOAT = "float"

# relative tolerance of the float-mode Ferrand test
FLOAT_RTOL = 1e-9


@dataclass(frozen=True, order=True)
class LatticePoint:
    x: int
    y: int

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(self.x - other.x, self.y - other.y)

    def conj(self) -> LatticePoint:
        return LatticePoint(self.x, -self.y)

    @property
    def in_right_half(self) -> bool:
        return self.x >= 0

    def as_gaussian(self) -> GaussianRational:
        return GaussianRational(self.x, self.y)

    def __str__(self):
        sign = "-" if self.y < 0 else "+"
        return f"{self.x}{sign}{abs(self.y)}i"


ORIGIN = LatticePoint(0, 0)
_STEPS = {(1, 0), (-1, 0), (0, 1), (0, -1)}


def point(p) -> LatticePoint:
    """Coerce ``LatticePoint``, ``(x, y)``, ``int`` or ``complex`` with integer parts."""
    if isinstance(p, LatticePoint):
        return p
    if isinstance(p, tuple):
        return LatticePoint(int(p[0]), int(p[1]))
    if isinstance(p, int):
        return LatticePoint(p, 0)
    if isinstance(p, complex):
        if p.real != int(p.real) or p.imag != int(p.imag):
            raise ValueError(f"{p} is not a lattice point")
        return LatticePoint(int(p.real), int(p.imag))
    raise TypeError(f"cannot interpret {p!r} as a lattice point")


@dataclass(frozen=True)
class Window:
    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise WindowError(f"empty window {self.as_list()}")

    @classmethod
    def square(cls, size: int, x0: int = 0, y0: int = 0) -> Window:
        return cls(x0, x0 + size - 1, y0, y0 + size - 1)

    def as_list(self) -> list[int]:
        return [self.x_min, self.x_max, self.y_min, self.y_max]

    def __contains__(self, p) -> bool:
        p = point(p)
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max

    def __iter__(self) -> Iterator[LatticePoint]:
        for y in range(self.y_min, self.y_max + 1):
            for x in range(self.x_min, self.x_max + 1):
                yield LatticePoint(x, y)

    def __len__(self):
        return (self.x_max - self.x_min + 1) * (self.y_max - self.y_min + 1)

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    def unit_squares(self) -> Iterator[LatticePoint]:
        """Lower-left corners of all unit squares inside the window."""
        for y in range(self.y_min, self.y_max):
            for x in range(self.x_min, self.x_max):
                yield LatticePoint(x, y)


@dataclass(frozen=True)
class LatticePath:
    vertices: tuple[LatticePoint, ...]

    def __init__(self, vertices: Sequence):
        vs = tuple(point(v) for v in vertices)
        if not vs:
            raise PathError("a path needs at least one vertex")
        for a, b in zip(vs, vs[1:]):
            if (b.x - a.x, b.y - a.y) not in _STEPS:
                raise PathError(f"step {a} -> {b} is not a unit step")
        object.__setattr__(self, "vertices", vs)

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def __len__(self):
        return len(self.vertices) - 1

    @classmethod
    def staircase(cls, start, end) -> LatticePath:
        """Horizontal run first, then vertical."""
        a, b = point(start), point(end)
        vs = [a]
        x, y = a.x, a.y
        sx = 1 if b.x >= x else -1
        while x != b.x:
            x += sx
            vs.append(LatticePoint(x, y))
        sy = 1 if b.y >= y else -1
        while y != b.y:
            y += sy
            vs.append(LatticePoint(x, y))
        return cls(vs)


def _scalar(value, mode: str):
    if mode == EXACT:
        return as_gaussian(value)
    if isinstance(value, GaussianRational):
        return to_float(value)
    return complex(value)


@dataclass(frozen=True)
class LatticeFunction:
    window: Window
    values: Mapping[LatticePoint, object] = field(repr=False)
    mode: str = EXACT

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        missing = [p for p in self.window if p not in self.values]
        if missing:
            raise WindowError(f"no value at {missing[0]} (and {len(missing) - 1} more)")

    @classmethod
    def from_callable(cls, window: Window, fn: Callable, mode: str = EXACT) -> LatticeFunction:
        """Sample ``fn(z)`` on the window; ``z`` is passed as a GaussianRational
        in exact mode and as a complex number in float mode."""
        vals = {}
        for p in window:
            z = p.as_gaussian() if mode == EXACT else complex(p.x, p.y)
            vals[p] = _scalar(fn(z), mode)
        return cls(window, vals, mode)

    @classmethod
    def constant(cls, window: Window, k, mode: str = EXACT) -> LatticeFunction:
        k = _scalar(k, mode)
        return cls(window, {p: k for p in window}, mode)

    def __call__(self, p):
        p = point(p)
        try:
            return self.values[p]
        except KeyError:
            raise WindowError(f"{p} outside window {self.window.as_list()}") from None

    def restrict(self, window: Window) -> LatticeFunction:
        return LatticeFunction(window, {p: self(p) for p in window}, self.mode)

    def to_float(self) -> LatticeFunction:
        if self.mode == FLOAT:
            return self
        return LatticeFunction(self.window, {p: to_float(v) for p, v in self.values.items()}, FLOAT)

    def _combine(self, other: LatticeFunction, op) -> LatticeFunction:
        if self.window != other.window or self.mode != other.mode:
            raise WindowError("operands live on different windows or modes")
        return LatticeFunction(self.window, {p: op(self(p), other(p)) for p in self.window}, self.mode)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scaled(self, c) -> LatticeFunction:
        c = _scalar(c, self.mode)
        return LatticeFunction(self.window, {p: c * v for p, v in self.values.items()}, self.mode)

    def equals(self, other: LatticeFunction) -> bool:
        """Exact equality on the common window."""
        common = _intersect(self.window, other.window)
        return all(self(p) == other(p) for p in common)

    def max_abs_diff(self, other: LatticeFunction) -> float:
        common = _intersect(self.window, other.window)
        return max(abs(complex(self(p)) - complex(other(p))) for p in common)


def _intersect(a: Window, b: Window) -> Window:
    return Window(max(a.x_min, b.x_min), min(a.x_max, b.x_max), max(a.y_min, b.y_min), min(a.y_max, b.y_max))


def _const(value, mode: str):
    return as_gaussian(value) if mode == EXACT else to_float(as_gaussian(value))


# -- difference operators -------------------------------------------------------


def delta_x(f: LatticeFunction) -> LatticeFunction:
    """``f(z+1) - f(z)`` on the window minus its last column."""
    w = f.window
    if w.width < 2:
        raise WindowError("window too thin for delta_x")
    out = Window(w.x_min, w.x_max - 1, w.y_min, w.y_max)
    vals = {p: f.values[LatticePoint(p.x + 1, p.y)] - f.values[p] for p in out}
    return LatticeFunction(out, vals, f.mode)


def delta_y(f: LatticeFunction) -> LatticeFunction:
    """``f(z+i) - f(z)`` on the window minus its top row."""
    w = f.window
    if w.height < 2:
        raise WindowError("window too thin for delta_y")
    out = Window(w.x_min, w.x_max, w.y_min, w.y_max - 1)
    vals = {p: f.values[LatticePoint(p.x, p.y + 1)] - f.values[p] for p in out}
    return LatticeFunction(out, vals, f.mode)


def ferrand_operator(f: LatticeFunction) -> LatticeFunction:
    """``(alpha_- dx + alpha_+ dy + dx dy / 2) f`` on the window shrunk by one
    in both directions.  Vanishes identically iff ``f`` is discrete analytic."""
    am, ap = _const(alpha("-"), f.mode), _const(alpha("+"), f.mode)
    half = _const(GaussianRational(1, 0) / 2, f.mode)
    dx = delta_x(f)
    dy = delta_y(f)
    dxy = delta_y(dx)
    w = dxy.window
    vals = {p: am * dx(p) + ap * dy(p) + half * dxy(p) for p in w}
    return LatticeFunction(w, vals, f.mode)


@dataclass(frozen=True)
class SquareViolation:
    corner: LatticePoint
    lhs: object
    rhs: object


@dataclass(frozen=True)
class AnalyticityReport:
    analytic: bool
    violations: tuple[SquareViolation, ...]

    def __bool__(self):
        return self.analytic


def is_discrete_analytic(f: LatticeFunction, rtol: float = FLOAT_RTOL) -> AnalyticityReport:
    """Check the Ferrand relation on every unit square of the window.

    For each corner ``z`` compares ``(f(z+1+i) - f(z))/(1+i)`` with
    ``(f(z+1) - f(z+i))/(1-i)``: exactly in exact mode, and up to
    ``rtol * (1 + max |f| on the square)`` in float mode.
    """
    w = f.window
    if w.width < 2 or w.height < 2:
        raise WindowError("window contains no unit square")
    d1 = _const(GaussianRational(1, 1), f.mode)
    d2 = _const(GaussianRational(1, -1), f.mode)
    violations = []
    for z in w.unit_squares():
        f00 = f.values[z]
        f10 = f.values[LatticePoint(z.x + 1, z.y)]
        f01 = f.values[LatticePoint(z.x, z.y + 1)]
        f11 = f.values[LatticePoint(z.x + 1, z.y + 1)]
        lhs = (f11 - f00) / d1
        rhs = (f10 - f01) / d2
        if f.mode == EXACT:
            bad = lhs != rhs
        else:
            scale = 1.0 + max(abs(f00), abs(f10), abs(f01), abs(f11))
            bad = abs(lhs - rhs) > rtol * scale
        if bad:
            violations.append(SquareViolation(z, lhs, rhs))
    return AnalyticityReport(not violations, tuple(violations))


def _require_analytic(f: LatticeFunction) -> None:
    w = f.window
    if w.width < 2 or w.height < 2:
        return
    report = is_discrete_analytic(f)
    if not report:
        v = report.violations[0]
        raise NotAnalyticError(f"not discrete analytic: Ferrand relation fails on the square at {v.corner}")


# -- integration ----------------------------------------------------------


def discrete_integral(f: LatticeFunction, path: LatticePath):
    """Trapezoid sum ``sum (f(z_{k-1}) + f(z_k))/2 * (z_k - z_{k-1})``."""
    for v in path.vertices:
        if v not in f.window:
            raise PathError(f"path vertex {v} outside window {f.window.as_list()}")
    steps = {
        (1, 0): _const(1, f.mode),
        (-1, 0): _const(-1, f.mode),
        (0, 1): _const(GaussianRational(0, 1), f.mode),
        (0, -1): _const(GaussianRational(0, -1), f.mode),
    }
    half = _const(GaussianRational(1) / 2, f.mode)
    total = _const(0, f.mode)
    for a, b in zip(path.vertices, path.vertices[1:]):
        total = total + (f.values[a] + f.values[b]) * steps[(b.x - a.x, b.y - a.y)]
    return total * half


def _staircase_integrals(f: LatticeFunction) -> dict[LatticePoint, object]:
    """``int_0^z f`` along the staircase path, for every point of the window."""
    w = f.window
    v = f.values
    half = _const(GaussianRational(1) / 2, f.mode)
    iunit = _const(GaussianRational(0, 1), f.mode)
    row = {0: _const(0, f.mode)}
    for x in range(1, w.x_max + 1):
        row[x] = row[x - 1] + (v[LatticePoint(x - 1, 0)] + v[LatticePoint(x, 0)]) * half
    for x in range(-1, w.x_min - 1, -1):
        row[x] = row[x + 1] - (v[LatticePoint(x + 1, 0)] + v[LatticePoint(x, 0)]) * half
    out = {}
    for x in range(w.x_min, w.x_max + 1):
        out[LatticePoint(x, 0)] = row[x]
        acc = row[x]
        for y in range(1, w.y_max + 1):
            acc = acc + (v[LatticePoint(x, y - 1)] + v[LatticePoint(x, y)]) * half * iunit
            out[LatticePoint(x, y)] = acc
        acc = row[x]
        for y in range(-1, w.y_min - 1, -1):
            acc = acc - (v[LatticePoint(x, y + 1)] + v[LatticePoint(x, y)]) * half * iunit
            out[LatticePoint(x, y)] = acc
    return out


def z_operator(f: LatticeFunction) -> LatticeFunction:
    """``(Zf)(z) = (f(0) - f(z))/2 + int_0^z f`` on the same window.

    Refuses input that fails the Ferrand test: the integral would depend on
    the path.
    """
    if ORIGIN not in f.window:
        raise OriginMissingError("window does not contain the origin")
    _require_analytic(f)
    integrals = _staircase_integrals(f)
    half = _const(GaussianRational(1) / 2, f.mode)
    f0 = f.values[ORIGIN]
    vals = {p: (f0 - f.values[p]) * half + integrals[p] for p in f.window}
    return LatticeFunction(f.window, vals, f.mode)


def e0(f: LatticeFunction):
    """Evaluation at the origin."""
    if ORIGIN not in f.window:
        raise OriginMissingError("window does not contain the origin")
    return f.values[ORIGIN]


def e0_star(k, window: Window, mode: str = EXACT) -> LatticeFunction:
    """The constant function ``k`` on ``window``."""
    return LatticeFunction.constant(window, k, mode)

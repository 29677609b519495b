"""Scalars, planar points and signed areas.

Every quantity lives in one of two scalar modes:

* ``"rational"`` -- :class:`fractions.Fraction` (ints are promoted on entry);
  arithmetic is exact.
* ``"float"`` -- binary64 ``float``; comparisons use a relative tolerance.

A computation never mixes the two; :class:`Point` arithmetic raises
:class:`~bikepath.errors.ModeError` if it is asked to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import InvalidInputError, ModeError

RATIONAL = "rational"
FLOAT = "float"
MODES = (RATIONAL, FLOAT)

#: Default relative tolerance for float-mode comparisons.
DEFAULT_TOL = 1e-10

Scalar = Union[Fraction, float]


def mode_of(value) -> str:
    if isinstance(value, bool):
        raise ModeError("booleans are not scalars")
    if isinstance(value, Rational):
        return RATIONAL
    if isinstance(value, float):
        return FLOAT
    raise ModeError(f"not a scalar: {value!r}")


def common_mode(values: Iterable) -> str:
    """Return the single mode shared by ``values``; raise if they disagree."""
    mode = None
    for v in values:
        m = mode_of(v)
        if mode is None:
            mode = m
        elif m != mode:
            raise ModeError("rational and float scalars mixed in one computation")
    if mode is None:
        raise InvalidInputError("no scalars given")
    return mode


def to_scalar(value, mode: str = RATIONAL) -> Scalar:
    """Coerce ``value`` (int, Fraction, float or string) into ``mode``.

    Strings are parsed as ``"p/q"``, ``"p"`` or a decimal literal. In rational
    mode decimal strings are read exactly (``"0.1"`` is 1/10); a float value is
    refused, since it would silently import rounding error.
    """
    if mode not in MODES:
        raise InvalidInputError(f"unknown scalar mode {mode!r}")
    if isinstance(value, str):
        text = value.strip()
        try:
            if mode == RATIONAL:
                return Fraction(text)
            if "/" in text:
                return float(Fraction(text))
            return float(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"cannot parse scalar {value!r}") from exc
    if isinstance(value, bool):
        raise InvalidInputError("booleans are not scalars")
    if mode == RATIONAL:
        if isinstance(value, Rational):
            return Fraction(value)
        raise ModeError(f"float {value!r} given where a rational is required")
    if isinstance(value, (Rational, float)):
        return float(value)
    raise InvalidInputError(f"not a scalar: {value!r}")


def format_scalar(value: Scalar) -> str:
    """Canonical text: ``"p/q"``, ``"p"`` when q = 1, or shortest float repr."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def exact_sqrt(value: Fraction) -> Fraction | None:
    """Rational square root of ``value`` when it exists, else ``None``."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def close_to_zero(value: Scalar, scale: Scalar = 1, tol: float = DEFAULT_TOL) -> bool:
    """Exact ``value == 0`` for rationals; ``|value| <= tol * scale`` for floats."""
    if isinstance(value, float):
        return abs(value) <= tol * max(float(abs(scale)), 1e-300)
    return value == 0


@dataclass(frozen=True, slots=True)
class Point:
    """A point (or displacement vector) in the plane."""

    x: Scalar
    y: Scalar

    def __post_init__(self):
        x, y = self.x, self.y
        if type(x) is int:
            object.__setattr__(self, "x", Fraction(x))
        if type(y) is int:
            object.__setattr__(self, "y", Fraction(y))
        if mode_of(self.x) != mode_of(self.y):
            raise ModeError("point coordinates mix rational and float")

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.x, float) else RATIONAL

    def _check(self, other: "Point") -> None:
        if isinstance(self.x, float) is not isinstance(other.x, float):
            raise ModeError("rational and float points mixed in one computation")

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def __mul__(self, s) -> "Point":
        if isinstance(s, float) is not isinstance(self.x, float):
            if not (type(s) is int):
                raise ModeError("scalar and point modes differ")
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> Scalar:
        self._check(other)
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> Scalar:
        self._check(other)
        return self.x * other.y - self.y * other.x

    def norm2(self) -> Scalar:
        return self.x * self.x + self.y * self.y

    def to_float(self) -> "Point":
        return Point(float(self.x), float(self.y))

    def as_tuple(self) -> tuple:
        return (self.x, self.y)


#: A displacement is represented by the same type as a position.
Vector = Point


def point(x, y, mode: str = RATIONAL) -> Point:
    """Build a point from loosely typed coordinates (strings allowed)."""
    return Point(to_scalar(x, mode), to_scalar(y, mode))


def origin(mode: str = RATIONAL) -> Point:
    zero = Fraction(0) if mode == RATIONAL else 0.0
    return Point(zero, zero)


def e1(mode: str = RATIONAL) -> Point:
    if mode == RATIONAL:
        return Point(Fraction(1), Fraction(0))
    return Point(1.0, 0.0)


def shoelace_area(vertices: Sequence[Point]) -> Scalar:
    """Signed area of the closed polygon through ``vertices`` (CCW positive)."""
    pts = list(vertices)
    if len(pts) < 3:
        raise InvalidInputError("a polygon needs at least 3 vertices")
    mode = common_mode(p.x for p in pts)
    total = Fraction(0) if mode == RATIONAL else 0.0
    prev = pts[-1]
    for cur in pts:
        total += prev.x * cur.y - cur.x * prev.y
        prev = cur
    return total / 2


def triangle_area(a: Point, b: Point, c: Point) -> Scalar:
    """Signed area of triangle ``abc``."""
    return (b - a).cross(c - a) / 2


def shoelace_error_bound(vertices: Sequence[Point]) -> float:
    """Rough float rounding bound for :func:`shoelace_area` on ``vertices``."""
    pts = list(vertices)
    mag = 0.0
    prev = pts[-1]
    for cur in pts:
        mag += abs(float(prev.x) * float(cur.y)) + abs(float(cur.x) * float(prev.y))
        prev = cur
    return mag * len(pts) * 2.0**-52


class ParallelCheck(NamedTuple):
    parallel: bool
    degenerate: bool
    # |cross| in rational mode, |cross| / (|u| |v|) in float mode
    violation: Scalar


def parallel_check(u: Point, v: Point, tol: float = DEFAULT_TOL) -> ParallelCheck:
    cross = u.cross(v)
    if u.mode == RATIONAL:
        degenerate = (u.x == 0 and u.y == 0) or (v.x == 0 and v.y == 0)
        return ParallelCheck(cross == 0, degenerate, abs(cross))
    scale = math.sqrt(u.norm2() * v.norm2())
    if scale == 0.0:
        return ParallelCheck(True, True, 0.0)
    rel = abs(cross) / scale
    return ParallelCheck(rel <= tol, False, rel)


def is_parallel(u: Point, v: Point, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``u`` and ``v`` are parallel; a zero vector is parallel to all."""
    return parallel_check(u, v, tol).parallel

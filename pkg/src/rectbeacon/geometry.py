"""Exact 2-D primitives: rational scalars, points, axis-parallel segments."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

# All coordinates and lengths in this package are exact rationals.  Fraction
# already guarantees canonical form (reduced, positive denominator), so it is
# used directly as the scalar type.
Scalar = Fraction

ScalarLike = Union[int, str, Fraction]


def scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or string like '7/2' / '-3' to an exact Scalar.

    Floats are rejected on purpose: silently rationalizing binary floats is a
    classic source of wrong geometric predicates.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")


class Point:
    """Immutable exact point; also serves as a 2-vector."""

    __slots__ = ("x", "y")

    def __init__(self, x: ScalarLike, y: ScalarLike):
        object.__setattr__(self, "x", scalar(x))
        object.__setattr__(self, "y", scalar(y))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Point is immutable")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, s: ScalarLike) -> "Point":
        s = scalar(s)
        return Point(self.x * s, self.y * s)

    __rmul__ = __mul__

    def cross(self, other: "Point") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Point") -> Fraction:
        return self.x * other.x + self.y * other.y

    def dist2(self, other: "Point") -> Fraction:
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + dy * dy

    def key(self) -> tuple:
        """Lexicographic sort key (x, then y)."""
        return (self.x, self.y)

    def __eq__(self, other) -> bool:
        return isinstance(other, Point) and self.x == other.x and self.y == other.y

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def cross3(a: Point, b: Point, c: Point) -> Fraction:
    """Cross product of (b-a) and (c-a); sign gives the turn direction."""
    return (b - a).cross(c - a)


def on_axis_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed axis-parallel segment [a, b]."""
    if a.x == b.x:
        if p.x != a.x:
            return False
        lo, hi = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
        return lo <= p.y <= hi
    if a.y == b.y:
        if p.y != a.y:
            return False
        lo, hi = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
        return lo <= p.x <= hi
    raise ValueError("segment is not axis-parallel")


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def format_scalar(v: Fraction) -> str:
    """Canonical string form: integer or 'p/q'."""
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"

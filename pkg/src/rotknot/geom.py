"""Exact planar geometry over cyclotomic coordinates.

Points are complex cyclotomic numbers.  Signed areas are kept 4i-scaled
so they stay inside the field (the raw area of a cyclotomic triangle
need not be cyclotomic, but 4i times it always is); a floating mirror
is attached for display and sign reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    Cyc,
    Turn,
    cyc_from_json,
    cyc_root,
    cyc_to_json,
    turn_to_root,
)

# a point of the plane is just a cyclotomic number
Point = Cyc

ORIGIN = Cyc.zero()


def point_xy(re: Fraction | int, im: Fraction | int = 0) -> Point:
    """The point re + im*i with rational coordinates."""
    return Cyc.rational(re) + Cyc.imag_unit() * Fraction(im)


def fmt12(value: float) -> str:
    """Floats shown with 12 significant digits; negative zero normalized."""
    if value == 0.0:
        value = 0.0
    out = "%.12g" % value
    return "0" if out == "-0" else out


def point_to_json(z: Point) -> dict:
    w = z.embed()
    return {"value": cyc_to_json(z), "approx": [fmt12(w.real), fmt12(w.imag)]}


def point_from_json(data: dict) -> Point:
    return cyc_from_json(data["value"])


def rotate(z: Point, center: Point, t: Turn, level: int | None = None) -> Point:
    """Exact image of z under rotation about center by the turn t."""
    return (z - center) * turn_to_root(t, level) + center


@dataclass(frozen=True)
class AreaValue:
    """A signed area, stored as the exact field element 4i * area.

    The scaled value is purely imaginary (conj(scaled) = -scaled), so
    the honest area is real; `approx` reads it off through the complex
    embedding.  Exact zero and exact equality never consult floats.
    """

    scaled: Cyc

    @property
    def approx(self) -> float:
        return (self.scaled.embed() / 4j).real

    def is_zero(self) -> bool:
        return self.scaled.is_zero()

    def sign(self) -> int:
        if self.scaled.is_zero():
            return 0
        return 1 if self.approx > 0 else -1

    def __add__(self, other: "AreaValue") -> "AreaValue":
        return AreaValue(self.scaled + other.scaled)

    def __sub__(self, other: "AreaValue") -> "AreaValue":
        return AreaValue(self.scaled - other.scaled)

    def __neg__(self) -> "AreaValue":
        return AreaValue(-self.scaled)

    def __mul__(self, factor: int | Fraction) -> "AreaValue":
        return AreaValue(self.scaled * Fraction(factor))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"AreaValue({fmt12(self.approx)})"


AREA_ZERO = AreaValue(Cyc.zero())


def signed_area_tri(x: Point, y: Point, z: Point) -> AreaValue:
    """Signed area of the triangle (x, y, z), positive counterclockwise.

    4i * area = conj(y-x)*(z-x) - (y-x)*conj(z-x); for (0, 1, i) this
    gives scaled 2i, area +1/2.  Degenerate triangles give exact zero.
    """
    a = y - x
    b = z - x
    return AreaValue(a.conj() * b - a * b.conj())


def signed_area_polygon(
    vertices: list[Point], o: Point | None = None, *, debug: bool = False
) -> AreaValue:
    """Sum of triangle areas fanned from o over the closed vertex cycle.

    The value does not depend on o; with debug=True this is verified by
    recomputing from a second base point.
    """
    if len(vertices) < 2:
        raise ValueError("polygon needs at least 2 vertices")
    if o is None:
        o = ORIGIN

    def fan(base: Point) -> AreaValue:
        total = AREA_ZERO
        m = len(vertices)
        for i in range(m):
            total = total + signed_area_tri(base, vertices[i], vertices[(i + 1) % m])
        return total

    out = fan(o)
    if debug:
        alt = fan(o + 1 + Cyc.imag_unit())
        if alt != out:
            raise AssertionError("fan sum depends on the base point")
    return out


def boundary_area_check(x: Point, y: Point, z: Point, w: Point) -> AreaValue:
    """s(y,z,w) - s(x,z,w) + s(x,y,w) - s(x,y,z); always exactly zero."""
    return (
        signed_area_tri(y, z, w)
        - signed_area_tri(x, z, w)
        + signed_area_tri(x, y, w)
        - signed_area_tri(x, y, z)
    )


@dataclass(frozen=True)
class PolygonSpec:
    """A regular polygon of type (m, k), anchored by its first edge.

    The walk starts at `anchor`, the first edge points along `direction`,
    every edge has length `side`, and each step turns by k/m of a full
    turn.  gcd(m, k) > 1 makes vertices repeat with period m/gcd(m, k).
    """

    m: int
    k: int
    anchor: Point
    direction: Turn
    side: Fraction = Fraction(1)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("polygon needs m >= 2")
        if not 1 <= self.k <= self.m - 1:
            raise ValueError(f"step k={self.k} outside [1, {self.m - 1}]")
        side = Fraction(self.side)
        if side <= 0:
            raise ValueError("side must be positive")
        object.__setattr__(self, "side", side)

    @property
    def m_prime(self) -> int:
        from math import gcd

        return self.m // gcd(self.m, self.k)

    def vertex(self, j: int) -> Point:
        return polygon_vertices(self)[j % self.m]


def polygon_vertices(spec: PolygonSpec) -> list[Point]:
    """The m vertices of the edge walk; the walk provably closes.

    w_0 = anchor and w_{j+1} = w_j + side * u(direction) * zeta_m^{kj};
    closure (w_m = w_0) is asserted exactly.
    """
    verts = [spec.anchor]
    u0 = turn_to_root(spec.direction) * spec.side
    zk = cyc_root(spec.m, spec.k)
    step = u0
    for _ in range(spec.m - 1):
        verts.append(verts[-1] + step)
        step = step * zk
    closure = verts[-1] + step
    if closure != spec.anchor:
        raise AssertionError("polygon walk failed to close")
    return verts


def mirror_type(spec: PolygonSpec) -> PolygonSpec:
    """The type-(m, m-k) spec: same anchored first edge, mirrored walk."""
    return PolygonSpec(spec.m, spec.m - spec.k, spec.anchor, spec.direction, spec.side)


def polygon_area(spec: PolygonSpec) -> AreaValue:
    """Signed area swept by the closed edge walk (counterclockwise > 0)."""
    return signed_area_polygon(polygon_vertices(spec), spec.anchor)


def polygon_to_json(spec: PolygonSpec) -> dict:
    return {
        "m": spec.m,
        "k": spec.k,
        "anchor": point_to_json(spec.anchor),
        "direction": f"{spec.direction.numerator}/{spec.direction.denominator}",
        "side": str(spec.side),
    }

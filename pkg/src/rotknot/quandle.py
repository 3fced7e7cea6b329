"""Quandles: the dihedral family and the rotation quandle of the plane.

A quandle exposes `op` (written x * y in the literature), its inverse
`inv_op`, and exact element equality.  Finite instances additionally
enumerate their elements, which is what brute-force coloring search
needs; the rotation quandle is infinite and never enumerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Turn, turn_from_json, turn_to_json
from .geom import AreaValue, Point, point_from_json, point_to_json, rotate, signed_area_tri


@dataclass(frozen=True)
class DihedralElem:
    """An element of the dihedral quandle on Z/nZ."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("dihedral quandle needs n >= 3")
        object.__setattr__(self, "value", self.value % self.n)


class DihedralQuandle:
    """x * y = 2y - x mod n; involutory, so inv_op coincides with op."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("dihedral quandle needs n >= 3")
        self.n = n

    def _check(self, *xs: DihedralElem):
        for x in xs:
            if not isinstance(x, DihedralElem) or x.n != self.n:
                raise ValueError(f"element {x!r} not in dihedral quandle of order {self.n}")

    def op(self, x: DihedralElem, y: DihedralElem) -> DihedralElem:
        self._check(x, y)
        return DihedralElem(self.n, 2 * y.value - x.value)

    def inv_op(self, x: DihedralElem, y: DihedralElem) -> DihedralElem:
        return self.op(x, y)

    def elements(self) -> list[DihedralElem]:
        return [DihedralElem(self.n, v) for v in range(self.n)]

    def __repr__(self) -> str:
        return f"DihedralQuandle({self.n})"


@dataclass(frozen=True)
class RotElem:
    """A rotation of the plane: center point and a rational turn."""

    center: Point
    angle: Turn

    def sort_key(self):
        return (self.angle.fraction, self.center.sort_key())


class RotQuandle:
    """Rotations of the plane under conjugation.

    x * y applies the rotation y to the center of x and keeps the angle
    of x: the conjugate y x y^{-1} of a rotation x is again a rotation,
    by the same angle, about the image of the center.
    """

    def op(self, x: RotElem, y: RotElem) -> RotElem:
        return RotElem(rotate(x.center, y.center, y.angle), x.angle)

    def inv_op(self, x: RotElem, y: RotElem) -> RotElem:
        return RotElem(rotate(x.center, y.center, -y.angle), x.angle)

    def __repr__(self) -> str:
        return "RotQuandle()"


ROT = RotQuandle()


def op_word(x: RotElem, ys: list[RotElem]) -> RotElem:
    """((x * y_0) * y_1) * ... for a list of operands."""
    out = x
    for y in ys:
        out = ROT.op(out, y)
    return out


def cocycle_phi(o: Point, x: RotElem, y: RotElem) -> AreaValue:
    """The area two-cocycle on the rotation quandle.

    Phi_o(x, y) = -s(o, x.center, y.center)
                  + s(o, image of x.center under y, y.center),
    an exact signed-area value.  Phi_o(x, x) = 0 and the cocycle
    relation hold identically; total crossing weights built from it do
    not depend on o.
    """
    moved = rotate(x.center, y.center, y.angle)
    return -signed_area_tri(o, x.center, y.center) + signed_area_tri(
        o, moved, y.center
    )


def verify_qc1(o: Point, x: RotElem, y: RotElem, z: RotElem) -> AreaValue:
    """f(x,y) + f(x*y, z) - f(x,z) - f(x*z, y*z) with f = Phi_o.

    The cocycle condition: the result is exactly zero for every input.
    """
    f = cocycle_phi
    xy = ROT.op(x, y)
    xz = ROT.op(x, z)
    yz = ROT.op(y, z)
    return f(o, x, y) + f(o, xy, z) - f(o, x, z) - f(o, xz, yz)


def elem_to_json(x: DihedralElem | RotElem) -> dict:
    if isinstance(x, DihedralElem):
        return {"dihedral": {"n": x.n, "value": x.value}}
    return {"rot": {"center": point_to_json(x.center), "angle": turn_to_json(x.angle)}}


def elem_from_json(data: dict) -> DihedralElem | RotElem:
    if "dihedral" in data:
        d = data["dihedral"]
        return DihedralElem(int(d["n"]), int(d["value"]))
    r = data["rot"]
    return RotElem(point_from_json(r["center"]), turn_from_json(r["angle"]))

"""Planar geometry: rotations, signed areas, polygon walks."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from rotknot.exactnum import Cyc, Turn, cyc_root
from rotknot.geom import (
    ORIGIN,
    AreaValue,
    PolygonSpec,
    boundary_area_check,
    mirror_type,
    point_from_json,
    point_to_json,
    point_xy,
    polygon_area,
    polygon_vertices,
    rotate,
    signed_area_polygon,
    signed_area_tri,
)


def rand_point(rng: random.Random, level: int = 12) -> Cyc:
    from tests.test_exactnum import rand_cyc

    return rand_cyc(rng, level, span=4)


class TestRotate:
    def test_fixed_point(self):
        z = point_xy(3, Fraction(1, 2))
        for t in (Turn(0), Turn(1, 3), Turn(5, 8)):
            assert rotate(z, z, t) == z

    def test_half_turn(self):
        assert rotate(ORIGIN, Cyc.one(), Turn(1, 2)) == Cyc.rational(2)

    def test_quarter_turn(self):
        assert rotate(Cyc.one(), ORIGIN, Turn(1, 4)) == Cyc.imag_unit()

    def test_composition(self):
        rng = random.Random(17)
        for _ in range(30):
            z = rand_point(rng)
            c = rand_point(rng)
            a, b = Turn(1, 6), Turn(1, 4)
            assert rotate(rotate(z, c, a), c, b) == rotate(z, c, a + b)


class TestSignedAreaTri:
    def test_unit_right_triangle(self):
        val = signed_area_tri(ORIGIN, Cyc.one(), Cyc.imag_unit())
        assert val.scaled == 2 * Cyc.imag_unit()
        assert abs(val.approx - 0.5) < 1e-12
        assert val.sign() == 1

    def test_collinear_is_exact_zero(self):
        val = signed_area_tri(ORIGIN, Cyc.one(), Cyc.rational(2))
        assert val.is_zero() and val.sign() == 0

    def test_clockwise_flips_sign(self):
        val = signed_area_tri(ORIGIN, Cyc.imag_unit(), Cyc.one())
        assert abs(val.approx + 0.5) < 1e-12
        assert val.sign() == -1

    def test_scaled_is_purely_imaginary(self):
        rng = random.Random(5)
        for _ in range(50):
            x, y, z = (rand_point(rng) for _ in range(3))
            s = signed_area_tri(x, y, z).scaled
            assert s.conj() == -s

    def test_rotation_invariance(self):
        rng = random.Random(2024)
        turns = [Turn(1, 3), Turn(1, 4), Turn(5, 12), Turn(7, 8)]
        for _ in range(200):
            x, y, z, w = (rand_point(rng) for _ in range(4))
            t = rng.choice(turns)
            a = signed_area_tri(x, y, z)
            b = signed_area_tri(rotate(x, w, t), rotate(y, w, t), rotate(z, w, t))
            assert a == b


class TestSignedAreaPolygon:
    def test_unit_square(self):
        square = [ORIGIN, Cyc.one(), point_xy(1, 1), Cyc.imag_unit()]
        val = signed_area_polygon(square)
        assert val.scaled == 4 * Cyc.imag_unit()
        assert abs(val.approx - 1.0) < 1e-12

    def test_base_point_independence(self):
        square = [ORIGIN, Cyc.one(), point_xy(1, 1), Cyc.imag_unit()]
        far = point_xy(5, 3)
        assert signed_area_polygon(square, far) == signed_area_polygon(square)
        rng = random.Random(11)
        for _ in range(20):
            verts = [rand_point(rng) for _ in range(5)]
            o1, o2 = rand_point(rng), rand_point(rng)
            assert signed_area_polygon(verts, o1) == signed_area_polygon(verts, o2)

    def test_degenerate_two_gon(self):
        assert signed_area_polygon([ORIGIN, Cyc.one()]).is_zero()

    def test_debug_check_passes(self):
        verts = [ORIGIN, Cyc.one(), Cyc.imag_unit()]
        assert signed_area_polygon(verts, debug=True) == signed_area_tri(*verts)


class TestBoundaryCheck:
    def test_named_examples(self):
        assert boundary_area_check(
            ORIGIN, Cyc.one(), Cyc.imag_unit(), point_xy(1, 1)
        ).is_zero()
        assert boundary_area_check(
            ORIGIN, Cyc.one(), Cyc.rational(2), Cyc.rational(3)
        ).is_zero()

    def test_random_quadruples(self):
        rng = random.Random(404)
        for _ in range(100):
            pts = [rand_point(rng, rng.choice([8, 12, 24])) for _ in range(4)]
            assert boundary_area_check(*pts).is_zero()


class TestPolygonWalk:
    def test_unit_square_walk(self):
        spec = PolygonSpec(4, 1, ORIGIN, Turn(0))
        assert polygon_vertices(spec) == [
            ORIGIN,
            Cyc.one(),
            point_xy(1, 1),
            Cyc.imag_unit(),
        ]

    def test_degenerate_two_gon(self):
        spec = PolygonSpec(2, 1, ORIGIN, Turn(0))
        assert polygon_vertices(spec) == [ORIGIN, Cyc.one()]

    def test_overlapping_hexagon(self):
        # gcd(6,2)=2: the walk hits only 3 distinct points, each twice
        spec = PolygonSpec(6, 2, ORIGIN, Turn(0))
        verts = polygon_vertices(spec)
        assert spec.m_prime == 3
        assert len(set(verts)) == 3
        assert verts[:3] == verts[3:]

    def test_edges_have_exact_length(self):
        rng = random.Random(8)
        for _ in range(20):
            m = rng.randrange(2, 7)
            k = rng.randrange(1, m)
            side = Fraction(rng.randrange(1, 5), rng.randrange(1, 3))
            spec = PolygonSpec(m, k, rand_point(rng), Turn(rng.randrange(12), 12), side)
            verts = polygon_vertices(spec)
            for i in range(m):
                edge = verts[(i + 1) % m] - verts[i]
                assert edge.abs_sq() == Cyc.rational(side * side)

    def test_invalid_ranges(self):
        with pytest.raises(ValueError):
            PolygonSpec(4, 0, ORIGIN, Turn(0))
        with pytest.raises(ValueError):
            PolygonSpec(4, 4, ORIGIN, Turn(0))
        with pytest.raises(ValueError):
            PolygonSpec(1, 1, ORIGIN, Turn(0))


class TestPolygonArea:
    def test_equilateral_triangle(self):
        spec = PolygonSpec(3, 1, ORIGIN, Turn(0))
        val = polygon_area(spec)
        assert abs(val.approx - math.sqrt(3) / 4) < 1e-9

    def test_square_area_scales_quadratically(self):
        base = PolygonSpec(4, 1, ORIGIN, Turn(0))
        double = PolygonSpec(4, 1, ORIGIN, Turn(0), Fraction(2))
        assert polygon_area(double).scaled == 4 * polygon_area(base).scaled

    def test_mirror_negates_area(self):
        for m, k in ((3, 1), (4, 1), (5, 2), (6, 1)):
            spec = PolygonSpec(m, k, point_xy(1, 2), Turn(1, 8))
            assert polygon_area(mirror_type(spec)) == -polygon_area(spec)

    def test_mirror_is_involution(self):
        spec = PolygonSpec(5, 2, ORIGIN, Turn(0))
        assert mirror_type(mirror_type(spec)) == spec
        assert mirror_type(spec).k == 3


class TestSerialization:
    def test_point_round_trip(self):
        z = point_xy(Fraction(3, 2), Fraction(-1, 4)) + cyc_root(12, 7)
        assert point_from_json(point_to_json(z)) == z

    def test_approx_field_formatting(self):
        data = point_to_json(ORIGIN)
        assert data["approx"] == ["0", "0"]

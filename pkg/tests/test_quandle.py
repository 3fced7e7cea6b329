"""Quandle axioms and the area cocycle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rotknot.exactnum import Cyc, Turn
from rotknot.geom import ORIGIN, point_xy
from rotknot.quandle import (
    ROT,
    DihedralElem,
    DihedralQuandle,
    RotElem,
    cocycle_phi,
    elem_from_json,
    elem_to_json,
    verify_qc1,
)


def rand_rot(rng: random.Random, level: int = 12) -> RotElem:
    from tests.test_exactnum import rand_cyc

    denom = rng.choice([2, 3, 4, 6, 12])
    return RotElem(rand_cyc(rng, level, span=3), Turn(rng.randrange(denom), denom))


class TestDihedral:
    def test_named_example(self):
        q = DihedralQuandle(3)
        assert q.op(DihedralElem(3, 1), DihedralElem(3, 2)) == DihedralElem(3, 0)

    def test_axioms_small_orders(self):
        for n in (3, 5, 7):
            q = DihedralQuandle(n)
            elems = q.elements()
            for x in elems:
                assert q.op(x, x) == x
            for x in elems:
                for y in elems:
                    assert q.inv_op(q.op(x, y), y) == x
                    assert q.op(q.inv_op(x, y), y) == x
            for x in elems:
                for y in elems:
                    for z in elems:
                        assert q.op(q.op(x, y), z) == q.op(q.op(x, z), q.op(y, z))

    def test_instance_mismatch(self):
        q = DihedralQuandle(3)
        with pytest.raises(ValueError):
            q.op(DihedralElem(3, 0), DihedralElem(5, 0))

    def test_enumeration(self):
        assert len(DihedralQuandle(7).elements()) == 7


class TestRotQuandle:
    def test_named_example(self):
        x = RotElem(ORIGIN, Turn(1, 4))
        y = RotElem(Cyc.one(), Turn(1, 2))
        assert ROT.op(x, y) == RotElem(Cyc.rational(2), Turn(1, 4))

    def test_angle_preserved(self):
        rng = random.Random(31)
        for _ in range(50):
            x, y = rand_rot(rng), rand_rot(rng)
            assert ROT.op(x, y).angle == x.angle

    def test_idempotence(self):
        rng = random.Random(32)
        for _ in range(50):
            x = rand_rot(rng)
            assert ROT.op(x, x) == x

    def test_right_invertibility(self):
        rng = random.Random(33)
        for _ in range(100):
            x, y = rand_rot(rng), rand_rot(rng)
            assert ROT.inv_op(ROT.op(x, y), y) == x
            assert ROT.op(ROT.inv_op(x, y), y) == x

    def test_self_distributivity(self):
        rng = random.Random(34)
        for _ in range(500):
            x, y, z = rand_rot(rng), rand_rot(rng), rand_rot(rng)
            assert ROT.op(ROT.op(x, y), z) == ROT.op(ROT.op(x, z), ROT.op(y, z))


class TestCocycle:
    def test_qc2_vanishes_on_diagonal(self):
        rng = random.Random(35)
        for _ in range(50):
            x = rand_rot(rng)
            o = rand_rot(rng).center
            assert cocycle_phi(o, x, x).is_zero()

    def test_zero_angle_gives_zero(self):
        rng = random.Random(36)
        for _ in range(30):
            x = rand_rot(rng)
            y = RotElem(rand_rot(rng).center, Turn(0))
            assert cocycle_phi(ORIGIN, x, y).is_zero()

    def test_collinear_through_base(self):
        x = RotElem(Cyc.one(), Turn(1, 4))
        y = RotElem(ORIGIN, Turn(1, 4))
        assert cocycle_phi(ORIGIN, x, y).is_zero()

    def test_qc1_vanishes(self):
        rng = random.Random(37)
        for _ in range(200):
            o = rand_rot(rng).center
            x, y, z = rand_rot(rng), rand_rot(rng), rand_rot(rng)
            assert verify_qc1(o, x, y, z).is_zero()

    def test_qc1_on_degenerate_inputs(self):
        x = RotElem(ORIGIN, Turn(1, 6))
        assert verify_qc1(point_xy(2, 1), x, x, x).is_zero()
        y = RotElem(Cyc.rational(2), Turn(1, 6))
        z = RotElem(Cyc.rational(4), Turn(1, 3))
        assert verify_qc1(ORIGIN, x, y, z).is_zero()


class TestSerialization:
    def test_dihedral_round_trip(self):
        x = DihedralElem(5, 3)
        assert elem_from_json(elem_to_json(x)) == x

    def test_rot_round_trip(self):
        x = RotElem(point_xy(Fraction(1, 2), 3), Turn(5, 12))
        assert elem_from_json(elem_to_json(x)) == x

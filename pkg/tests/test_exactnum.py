"""Exact cyclotomic arithmetic: identities, reduction, units, turns."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from rotknot.exactnum import (
    BudgetError,
    Cyc,
    LevelError,
    NonIntegralError,
    Turn,
    cyc_from_json,
    cyc_root,
    cyc_to_json,
    cyclotomic_poly,
    enumerate_unit_elements,
    turn_from_json,
    turn_to_json,
    turn_to_root,
)


def rand_cyc(rng: random.Random, level: int, span: int = 6) -> Cyc:
    n_terms = rng.randrange(1, 5)
    terms = {}
    for _ in range(n_terms):
        e = rng.randrange(level)
        terms[e] = Fraction(rng.randrange(-span, span + 1), rng.randrange(1, 4))
    return Cyc.from_terms(level, terms)


class TestCyclotomicPoly:
    def test_small_levels(self):
        assert cyclotomic_poly(1) == (-1, 1)
        assert cyclotomic_poly(2) == (1, 1)
        assert cyclotomic_poly(3) == (1, 1, 1)
        assert cyclotomic_poly(4) == (1, 0, 1)
        assert cyclotomic_poly(6) == (1, -1, 1)
        assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)

    def test_degree_is_totient(self):
        phis = {8: 4, 9: 6, 10: 4, 15: 8, 20: 8, 24: 8, 30: 8, 60: 16}
        for n, phi in phis.items():
            assert len(cyclotomic_poly(n)) - 1 == phi

    def test_product_over_divisors(self):
        # product of cyclotomic polynomials over divisors of 12 is x^12 - 1
        prod = [1]
        for d in (1, 2, 3, 4, 6, 12):
            poly = cyclotomic_poly(d)
            new = [0] * (len(prod) + len(poly) - 1)
            for i, a in enumerate(prod):
                for j, b in enumerate(poly):
                    new[i + j] += a * b
            prod = new
        assert prod == [-1] + [0] * 11 + [1]


class TestReduction:
    def test_high_power_reduces(self):
        # zeta_3^2 = -1 - zeta_3
        assert cyc_root(3, 2) == Cyc(3, [-1, -1])

    def test_sum_of_all_roots_vanishes(self):
        for n in (3, 4, 5, 6, 8, 12):
            total = Cyc.zero()
            for e in range(n):
                total = total + cyc_root(n, e)
            assert total.is_zero()

    def test_root_power_wraps(self):
        assert cyc_root(12, 17) == cyc_root(12, 5)
        assert cyc_root(5, 5) == Cyc.one()


class TestArithmetic:
    def test_gaussian_product(self):
        i = Cyc.imag_unit()
        assert (1 + i) * (1 - i) == Cyc.rational(2)

    def test_cross_level_add(self):
        # zeta_3 + zeta_4 lives at level 12
        a = cyc_root(3) + cyc_root(4)
        assert a.level == 12
        z = a.embed()
        expect = complex(-0.5, math.sqrt(3) / 2) + 1j
        assert abs(z - expect) < 1e-12

    def test_inverse(self):
        rng = random.Random(20240811)
        for _ in range(60):
            level = rng.choice([3, 4, 5, 6, 8, 12, 24])
            a = rand_cyc(rng, level)
            if a.is_zero():
                continue
            assert a * a.inverse() == Cyc.one()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            Cyc.one() / Cyc.zero()

    def test_pow_negative(self):
        z = cyc_root(12, 5)
        assert z**-1 == cyc_root(12, 7)
        assert z**12 == Cyc.one()

    def test_ring_axioms_random(self):
        rng = random.Random(991)
        for _ in range(40):
            level = rng.choice([6, 8, 12])
            a, b, c = (rand_cyc(rng, level) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert a + b == b + a
            assert (a - b) + b == a


class TestGalois:
    def test_conj_of_root(self):
        assert cyc_root(12, 5).conj() == cyc_root(12, 7)

    def test_conj_is_involution(self):
        rng = random.Random(7)
        for _ in range(30):
            a = rand_cyc(rng, rng.choice([5, 8, 12]))
            assert a.conj().conj() == a

    def test_galois_demands_coprime(self):
        with pytest.raises(ValueError):
            cyc_root(12).galois(4)

    def test_abs_sq_rational_on_units(self):
        assert cyc_root(12, 5).abs_sq() == Cyc.one()
        assert (2 * cyc_root(8, 3)).abs_sq() == Cyc.rational(4)

    def test_abs_sq_multiplicative(self):
        rng = random.Random(41)
        for _ in range(25):
            a = rand_cyc(rng, 12)
            b = rand_cyc(rng, 12)
            assert (a * b).abs_sq() == a.abs_sq() * b.abs_sq()


class TestMinimalForm:
    def test_rational_descends_to_level_one(self):
        a = cyc_root(5) + 1 - cyc_root(5)
        assert a.min_form() == (1, (Fraction(1),))

    def test_level_six_value_lives_at_level_three(self):
        # zeta_6 = 1 + zeta_3
        assert cyc_root(6).min_form() == (3, (Fraction(1), Fraction(1)))

    def test_hash_consistent_across_levels(self):
        a = cyc_root(3).lift(12)
        b = cyc_root(3)
        assert a == b
        assert hash(a) == hash(b)
        assert len({a, b}) == 1

    def test_real_subfield_detection(self):
        # zeta_12 + conj is sqrt(3), which generates Q(sqrt 3) inside Q(zeta_12)
        s = cyc_root(12) + cyc_root(12).conj()
        level, _ = s.min_form()
        assert level == 12  # minimal CYCLOTOMIC level is still 12
        assert s.abs_sq() == Cyc.rational(3)


class TestEmbed:
    def test_embedding_is_homomorphism(self):
        rng = random.Random(20240612)
        for _ in range(500):
            level = rng.choice([3, 4, 5, 6, 8, 12, 20, 24])
            a = rand_cyc(rng, level)
            b = rand_cyc(rng, level)
            za, zb = a.embed(), b.embed()
            assert abs((a + b).embed() - (za + zb)) < 1e-9
            assert abs((a * b).embed() - (za * zb)) < 1e-9

    def test_conj_embeds_to_conjugate(self):
        rng = random.Random(3)
        for _ in range(50):
            a = rand_cyc(rng, 24)
            assert abs(a.conj().embed() - a.embed().conjugate()) < 1e-9


class TestRootOfUnity:
    def test_primitive_order(self):
        assert cyc_root(12, 5).is_root_of_unity() == 12
        assert cyc_root(12, 2).is_root_of_unity() == 6
        assert cyc_root(12, 6).is_root_of_unity() == 2
        assert Cyc.one().is_root_of_unity() == 1

    def test_odd_level_negatives(self):
        # -zeta_3 has order 6 even though it lives at level 3
        assert (-cyc_root(3)).is_root_of_unity() == 6

    def test_non_unit_rejected(self):
        assert (1 + Cyc.imag_unit()).is_root_of_unity() is None

    def test_non_integral_raises(self):
        with pytest.raises(NonIntegralError):
            (Cyc.one() / 2).is_root_of_unity()


class TestEnumerateUnits:
    def test_counts_small_levels(self):
        assert len(enumerate_unit_elements(4, 1)) == 4
        assert len(enumerate_unit_elements(3, 1)) == 6
        assert len(enumerate_unit_elements(5, 1)) == 10

    def test_all_enumerated_are_roots(self):
        for val in enumerate_unit_elements(8, 1):
            order = val.is_root_of_unity()
            assert order is not None and 8 % math.gcd(order, 8) == 0

    def test_budget_guard(self):
        with pytest.raises(BudgetError):
            enumerate_unit_elements(24, 2)
        with pytest.raises(BudgetError):
            enumerate_unit_elements(12, 9)

    def test_deterministic_order(self):
        a = enumerate_unit_elements(4, 2)
        b = enumerate_unit_elements(4, 2)
        assert a == b


class TestTurn:
    def test_normalization(self):
        assert Turn(Fraction(5, 4)).fraction == Fraction(1, 4)
        assert Turn(Fraction(-1, 3)).fraction == Fraction(2, 3)

    def test_arithmetic(self):
        assert Turn(1, 2) + Turn(3, 4) == Turn(1, 4)
        assert Turn(1, 6) - Turn(1, 3) == Turn(5, 6)
        assert -Turn(1, 5) == Turn(4, 5)

    def test_turn_to_root_minimal(self):
        assert turn_to_root(Turn(1, 4)) == Cyc.imag_unit()
        assert turn_to_root(Turn(1, 3), 12) == cyc_root(12, 4)

    def test_level_error_reports_requirement(self):
        with pytest.raises(LevelError) as exc:
            turn_to_root(Turn(1, 5), 12)
        assert exc.value.required_level == 60

    def test_angle(self):
        assert abs(Turn(1, 4).angle() - math.pi / 2) < 1e-15


class TestSerialization:
    def test_cyc_round_trip(self):
        rng = random.Random(99)
        for _ in range(30):
            a = rand_cyc(rng, rng.choice([3, 4, 12, 24]))
            assert cyc_from_json(cyc_to_json(a)) == a

    def test_turn_round_trip(self):
        for t in (Turn(0), Turn(1, 2), Turn(7, 12)):
            assert turn_from_json(turn_to_json(t)) == t

    def test_json_shape(self):
        data = cyc_to_json(Cyc(3, [Fraction(1, 2), Fraction(-2, 3)]))
        assert data == {"level": 3, "coeffs": [["1", "2"], ["-2", "3"]]}

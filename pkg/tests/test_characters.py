"""Unit groups, character enumeration, and the prime-power extension."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest

from padic_lseries import (
    character_angle,
    conjugate_character,
    enumerate_characters,
    euler_phi,
    evaluate,
    extend_character,
    extended_char,
    unit_group,
)


def test_unit_group_spans_all_units():
    for k in range(1, 51):
        group = unit_group(k)
        assert group.totient == euler_phi(k)
        assert len(group.discrete_logs) == group.totient
        order_product = 1
        for d in group.generator_orders:
            order_product *= d
        assert order_product == group.totient
        for g, d in zip(group.generators, group.generator_orders):
            assert math.gcd(g, k) == 1 or k <= 2
            assert pow(g, d, max(k, 1)) % max(k, 1) == 1 % max(k, 1)


def test_discrete_logs_reconstruct_units():
    for k in (3, 4, 5, 8, 9, 12, 15, 16, 24, 35, 40):
        group = unit_group(k)
        for m, exps in group.discrete_logs.items():
            value = 1
            for g, e in zip(group.generators, exps):
                value = value * pow(g, e, k) % k
            assert value == m % k


def test_enumeration_count_and_principal_first():
    for k in range(1, 25):
        chars = enumerate_characters(k)
        assert len(chars) == euler_phi(k)
        assert chars[0].is_principal
        for m in range(k):
            expected = 1 if math.gcd(m, k) == 1 or k == 1 else 0
            assert evaluate(chars[0], m) == expected


def test_character_mod_4_values():
    chi = enumerate_characters(4)[1]
    assert character_angle(chi, 1) == Fraction(0)
    assert character_angle(chi, 3) == Fraction(1, 2)
    assert character_angle(chi, 2) is None
    assert evaluate(chi, 0) == 0
    assert abs(evaluate(chi, 3) + 1) < 1e-15


def test_character_mod_5_has_order_four():
    chars = enumerate_characters(5)
    orders = set()
    for chi in chars:
        angle = character_angle(chi, 2)  # 2 generates the units mod 5
        orders.add(angle.denominator if angle else 1)
    assert orders == {1, 2, 4}


def test_orthogonality_over_residues():
    for k in range(1, 25):
        for chi in enumerate_characters(k):
            total = sum(evaluate(chi, m) for m in range(k))
            expected = euler_phi(k) if chi.is_principal else 0
            assert abs(total - expected) < 1e-10


def test_orthogonality_over_characters():
    for k in (3, 4, 5, 8, 12):
        chars = enumerate_characters(k)
        for m in range(k):
            total = sum(evaluate(chi, m) for chi in chars)
            expected = euler_phi(k) if m % k == 1 % k else 0
            assert abs(total - expected) < 1e-10


def test_complete_multiplicativity_exact_angles():
    # chi(mn) = chi(m) chi(n) holds exactly on the rational angle level
    for k in (3, 4, 5, 7, 8, 12, 24):
        for chi in enumerate_characters(k):
            for m in range(0, 201, 7):
                for n in range(0, 201, 11):
                    am = character_angle(chi, m)
                    an = character_angle(chi, n)
                    amn = character_angle(chi, m * n)
                    if am is None or an is None:
                        assert amn is None
                    else:
                        assert amn == (am + an) % 1


def test_complete_multiplicativity_float_spot():
    rng = random.Random(2001)
    for k in (5, 8, 13):
        for chi in enumerate_characters(k):
            for _ in range(25):
                m = rng.randrange(0, 201)
                n = rng.randrange(0, 201)
                lhs = evaluate(chi, m * n)
                rhs = evaluate(chi, m) * evaluate(chi, n)
                assert abs(lhs - rhs) < 1e-12


def test_conjugate_character():
    for k in (4, 5, 8, 12):
        for chi in enumerate_characters(k):
            bar = conjugate_character(chi)
            for m in range(2 * k):
                assert abs(evaluate(bar, m) - evaluate(chi, m).conjugate()) < 1e-14
            assert conjugate_character(bar).index == chi.index


def test_unimodular_on_units():
    for k in (3, 8, 15):
        for chi in enumerate_characters(k):
            for m in range(k):
                if math.gcd(m, k) == 1:
                    assert abs(abs(evaluate(chi, m)) - 1) < 1e-14


def test_extension_powers_of_prime():
    chi = enumerate_characters(5)[1]
    x = extend_character(chi, 2)
    base = evaluate(chi, 2)
    for n in range(-6, 7):
        want = base**n
        assert abs(extended_char(x, n) - want) < 1e-12
    assert extended_char(x, 0) == 1 + 0j


def test_extension_degenerate_when_p_divides_modulus():
    chi = enumerate_characters(4)[1]
    x = extend_character(chi, 2)
    assert x.p_divides_k
    assert extended_char(x, 0) == 1 + 0j
    for n in (1, -1, 3):
        assert extended_char(x, n) == 0


def test_extension_respects_group_law():
    rng = random.Random(2002)
    chi = enumerate_characters(7)[2]
    x = extend_character(chi, 3)
    for _ in range(40):
        a = rng.randint(-8, 8)
        b = rng.randint(-8, 8)
        assert abs(extended_char(x, a + b) - extended_char(x, a) * extended_char(x, b)) < 1e-12


def test_evaluate_vanishes_off_units():
    for k in (4, 6, 9, 12):
        for chi in enumerate_characters(k):
            for m in range(k):
                if math.gcd(m, k) != 1:
                    assert evaluate(chi, m) == 0


def test_character_values_are_roots_of_unity():
    for k in (5, 8, 12):
        phi = euler_phi(k)
        for chi in enumerate_characters(k):
            for m in range(1, k):
                if math.gcd(m, k) != 1:
                    continue
                angle = character_angle(chi, m)
                assert angle is not None
                assert (angle * phi).denominator == 1  # order divides phi(k)
                value = evaluate(chi, m)
                assert abs(value - cmath.exp(2j * cmath.pi * float(angle))) < 1e-14

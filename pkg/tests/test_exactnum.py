import cmath
import math
import random
from fractions import Fraction

import pytest

from engine.exactnum import (
    ONE,
    ZERO,
    CycloError,
    CycloNum,
    as_rat,
    cyclo_root,
    cyclotomic_coeffs,
    exp_i_pi,
    root_counts_to_cyclo,
)


@pytest.mark.parametrize(
    "n, coeffs",
    [
        (1, (-1, 1)),
        (2, (1, 1)),
        (4, (1, 0, 1)),
        (6, (1, -1, 1)),
        (8, (1, 0, 0, 0, 1)),
        (12, (1, 0, -1, 0, 1)),
    ],
)
def test_cyclotomic_coefficients(n, coeffs):
    assert cyclotomic_coeffs(n) == coeffs


def test_roots_of_unity_reduce():
    i = cyclo_root(4, 1)
    assert i * i == -1
    assert (i * i).is_rational()
    assert cyclo_root(4, 2) == -1
    assert cyclo_root(3, 1) + cyclo_root(3, 2) == -1


def test_exp_i_pi_is_a_root_of_unity():
    zeta = exp_i_pi(Fraction(1, 4))
    power = ONE
    for _ in range(8):
        power = power * zeta
    assert power == 1
    assert exp_i_pi(1) == -1
    assert exp_i_pi(Fraction(1, 2)) == cyclo_root(4, 1)


def test_equality_across_fields_and_hash():
    i4 = cyclo_root(4, 1)
    i8 = cyclo_root(8, 2)
    assert i4 == i8
    assert hash(i4) == hash(i8)
    assert i4.promote(8).coeffs == i8.coeffs
    assert i4 != cyclo_root(8, 1)


def test_promotion_into_a_non_multiple_fails():
    with pytest.raises(CycloError):
        cyclo_root(4, 1).promote(6)


def test_rational_results_downgrade_to_order_one():
    value = cyclo_root(8, 1) * cyclo_root(8, 7)
    assert value.order == 1
    assert value.as_integer() == 1


def test_invalid_construction():
    with pytest.raises(CycloError):
        CycloNum(0, [1])
    with pytest.raises(CycloError):
        CycloNum(4, [1, 2, 3])
    with pytest.raises(CycloError):
        cyclo_root(4, 1).as_integer()
    with pytest.raises(CycloError):
        as_rat(0.5)


def test_render_and_basis():
    value = CycloNum.from_powers(8, {0: 1, 2: -1})
    assert value.render() == "1 - z8^2"
    assert value.basis_strings() == ["1", "0", "-1", "0"]
    assert ZERO.render() == "0"
    assert CycloNum.rational(Fraction(-3, 2)).render() == "-3/2"


def test_root_counts_cancel():
    assert root_counts_to_cyclo(4, {0: 1, 2: 1}).is_zero()
    assert root_counts_to_cyclo(6, {0: 2, 3: 1}, scale=3) == 3


def test_to_complex_matches_floats():
    assert abs(exp_i_pi(Fraction(1, 3)).to_complex() - cmath.exp(1j * math.pi / 3)) < 1e-12


def test_field_arithmetic_agrees_with_complex_arithmetic():
    rng = random.Random(20240601)
    for _ in range(25):
        n = rng.choice([3, 4, 5, 8, 12, 15])
        m = rng.choice([2, 3, 4, 6])
        a = CycloNum.from_powers(n, {k: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for k in range(n)})
        b = CycloNum.from_powers(m, {k: rng.randint(-3, 3) for k in range(m)})
        for exact, approx in [
            (a + b, a.to_complex() + b.to_complex()),
            (a - b, a.to_complex() - b.to_complex()),
            (a * b, a.to_complex() * b.to_complex()),
        ]:
            assert abs(exact.to_complex() - approx) < 1e-9
        assert (a - a).is_zero()
        assert a * ONE == a

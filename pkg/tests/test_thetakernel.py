import cmath
import random
from fractions import Fraction

import pytest

from engine.exactnum import cyclo_root
from engine.qxseries import ArgSpec, ShiftSpec, pretty
from engine.thetakernel import (
    SHIFT_RELATIONS,
    Monomial,
    ThetaError,
    check_shift_relation,
    eval_complex,
    f_ab,
    f_ab_product,
    phi,
    phi_psi_chains,
    pochhammer,
    psi,
    theta,
    theta_product,
)

ARGS = [
    ArgSpec((1,)),
    ArgSpec((1,), ShiftSpec(Fraction(1, 4))),
    ArgSpec((2,), ShiftSpec(0, Fraction(1, 2)), 2),
    ArgSpec((1,), ShiftSpec(Fraction(1, 3), Fraction(1, 4)), Fraction(1, 2)),
]


@pytest.mark.parametrize("kind", [1, 2, 3, 4])
@pytest.mark.parametrize("arg", ARGS)
def test_series_and_product_forms_agree(kind, arg):
    order = 20
    diff = theta(kind, arg, 1, order) - theta_product(kind, arg, 1, order)
    assert diff.is_zero_to_order(order)


@pytest.mark.parametrize("kind", [1, 2, 3, 4])
def test_triple_product_to_order_50(kind):
    arg = ArgSpec((1,))
    assert (theta(kind, arg, 1, 50) - theta_product(kind, arg, 1, 50)).is_zero_to_order(50)


def test_triple_product_at_random_arguments():
    rng = random.Random(1729)
    for _ in range(12):
        c = rng.choice([Fraction(1), Fraction(2), Fraction(3, 2), Fraction(1, 2)])
        shift = ShiftSpec(Fraction(rng.randint(-5, 5), rng.choice([2, 3, 4, 6])), c * Fraction(rng.randint(-3, 3), 8))
        arg = ArgSpec((rng.choice([1, 2, -1]),), shift, c)
        kind = rng.randint(1, 4)
        diff = theta(kind, arg, 1, 12) - theta_product(kind, arg, 1, 12)
        assert diff.is_zero_to_order(12), (kind, arg)


@pytest.mark.parametrize("relation", SHIFT_RELATIONS, ids=lambda r: f"theta{r.source}+{r.label}")
def test_quasi_periodicity(relation):
    assert check_shift_relation(relation, 20)


def test_shift_table_is_complete():
    assert len(SHIFT_RELATIONS) == 16
    assert {(r.source, r.label) for r in SHIFT_RELATIONS} == {
        (kind, label) for kind in (1, 2, 3, 4) for label in ("pi", "pi*tau", "pi/2", "pi*tau/2")
    }


def test_phi_and_psi_forms():
    failures = [chain.name for chain in phi_psi_chains(50) if not (chain.lhs - chain.rhs).is_zero_to_order(50)]
    assert failures == []


def test_phi_psi_leading_terms():
    assert pretty(phi(1, 10)) == "1 + 2*q + 2*q^4 + 2*q^9 + O(q^10)"
    assert pretty(psi(1, 11)) == "1 + q + q^3 + q^6 + q^10 + O(q^11)"
    assert pretty(phi(-1, 5)) == "1 - 2*q + 2*q^4 + O(q^5)"


def test_theta3_at_origin_is_phi():
    zero = theta(3, ArgSpec((), ShiftSpec(), 2), 0, 30)
    assert (zero - phi(1, 30)).is_zero_to_order(30)


def _naive(kind, z, tau, terms=30):
    total = 0j
    for n in range(-terms, terms + 1):
        if kind in (3, 4):
            sign = (-1) ** n if kind == 4 else 1
            total += sign * cmath.exp(1j * cmath.pi * tau * n * n + 2j * n * z)
        else:
            h = n + 0.5
            sign = -1j * (-1) ** n if kind == 1 else 1
            total += sign * cmath.exp(1j * cmath.pi * tau * h * h + 2j * h * z)
    return total


@pytest.mark.parametrize("kind", [1, 2, 3, 4])
def test_series_matches_naive_float_sum(kind):
    z, tau = 0.37 + 0.11j, 0.3 + 0.8j
    value, tail = eval_complex(theta(kind, ArgSpec((1,)), 1, 30), [z], tau)
    assert tail < 1e-12
    assert abs(value - _naive(kind, z, tau)) < 1e-10


def test_shifted_series_matches_shifted_float_sum():
    z, tau = 0.2 - 0.05j, -0.1 + 0.7j
    arg = ArgSpec((1,), ShiftSpec(Fraction(1, 4), Fraction(1, 2)))
    value, _ = eval_complex(theta(3, arg, 1, 30), [z], tau)
    assert abs(value - _naive(3, z + cmath.pi / 4 + cmath.pi * tau / 2, tau)) < 1e-10


def test_eval_complex_rejects_lower_half_plane():
    with pytest.raises(ThetaError):
        eval_complex(phi(1, 10), [], -0.5j)
    with pytest.raises(ThetaError):
        eval_complex(theta(3, ArgSpec((1,)), 1, 10), [], 1j)


def test_pochhammer_is_exact_below_order():
    series = pochhammer(Monomial(1, 1, ()), 1, 8)
    assert series.order == 8
    assert [series.coeff_at(k, ()).as_integer() for k in range(8)] == [1, -1, -1, 0, 0, 1, 0, 1]


def test_pochhammer_with_negative_exponent_and_phase():
    z = Monomial(1, -1, (1,), Fraction(1, 2))
    series = pochhammer(z, 1, 6)
    assert series.coeff_at(-1, (1,)) == -cyclo_root(4, 1)
    assert series.order == 6


def test_pochhammer_rejects_bad_base():
    with pytest.raises(ThetaError):
        pochhammer(Monomial(1, 1, ()), 0, 5)
    assert pochhammer(Monomial(0, 1, ()), 1, 5).coeff_at(0, ()) == 1


def test_f_ab_sum_and_product_agree():
    a = Monomial(1, 1, ())
    b = Monomial(1, 3, ())
    assert (f_ab(a, b, 40) - f_ab_product(a, b, 40)).is_zero_to_order(40)
    assert (f_ab(a, b, 40) - psi(1, 40)).is_zero_to_order(40)


def test_f_ab_divergence_and_errors():
    with pytest.raises(ThetaError):
        f_ab(Monomial(1, 1, ()), Monomial(1, -1, ()), 10)
    with pytest.raises(ThetaError):
        f_ab(Monomial(0, 1, ()), Monomial(1, 1, ()), 10)
    with pytest.raises(ThetaError):
        f_ab_product(Monomial(1, 1, (1,)), Monomial(1, 1, (0,)), 10)


def test_unknown_kind_and_infinite_order():
    with pytest.raises(ThetaError):
        theta(5, ArgSpec((1,)), 1, 10)
    with pytest.raises(ThetaError):
        theta(3, ArgSpec((1,)), 1, float("inf"))
    with pytest.raises(ThetaError):
        phi(2, 10)

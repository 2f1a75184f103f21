import random
from fractions import Fraction
from pathlib import Path

import pytest

from engine.exactnum import cyclo_root
from engine.qxseries import (
    INF,
    ArgSpec,
    QxSeries,
    SeriesError,
    ShiftSpec,
    pretty,
    product_to_order,
    render,
    series_mul,
    sum_series,
)
from engine.thetakernel import phi, theta


def geometric(order):
    return QxSeries(0, {(k, ()): 1 for k in range(int(order) + 1)}, order)


def test_constructor_drops_zero_and_out_of_order_terms():
    series = QxSeries(1, {(0, (1,)): 1, (3, (0,)): 2, (5, (0,)): 7, (1, (1,)): 0}, 4)
    assert series.terms == {(Fraction(0), (1,)): 1, (Fraction(3), (0,)): 2}
    series.audit()


def test_dimension_mismatch_is_rejected():
    with pytest.raises(SeriesError):
        QxSeries(1, {(0, (1, 2)): 1})
    with pytest.raises(SeriesError):
        QxSeries.constant(1, 1) + QxSeries.constant(2, 1)


def test_sum_order_is_the_minimum():
    total = geometric(5) + geometric(3)
    assert total.order == 3
    assert total.coeff_at(2, ()) == 2


def test_product_order_rule():
    a = QxSeries(0, {(0, ()): 1, (1, ()): 1}, 5)
    b = QxSeries(0, {(Fraction(-1, 2), ()): 1}, 3)
    assert series_mul(a, b).order == 3
    c = QxSeries(0, {(2, ()): 1}, 9)
    assert series_mul(a, c).order == 7


def test_reads_beyond_the_order_raise():
    series = geometric(4)
    with pytest.raises(SeriesError):
        series.coeff_at(4, ())
    with pytest.raises(SeriesError):
        series.is_zero_to_order(5)
    assert not series.is_zero_to_order(4)


def test_product_to_order_rebuilds_factors_for_negative_exponents():
    calls = []

    def build(order):
        calls.append(order)
        return geometric(order)

    def inverse_square(order):
        return QxSeries.monomial(0, 1, -2)

    product = product_to_order([build, inverse_square], 5)
    assert product.order == 5
    assert calls == [5, 7]
    assert sorted(q for q, _ in product.terms) == list(range(-2, 5))


def test_product_to_order_rejects_empty_input():
    with pytest.raises(SeriesError):
        product_to_order([], 3)


def test_shift_by_pi_flips_odd_powers():
    series = QxSeries(1, {(0, (1,)): 1, (1, (2,)): 3}, 10)
    shifted = series.shift_var(0, ShiftSpec(1))
    assert shifted.coeff_at(0, (1,)) == -1
    assert shifted.coeff_at(1, (2,)) == 3
    assert shifted.order == 10


def test_shift_by_pi_tau_on_an_exact_series():
    series = QxSeries(1, {(0, (2,)): 1, (0, (-2,)): 1})
    shifted = series.shift_var(0, ShiftSpec(0, 1))
    assert shifted.order == INF
    assert shifted.terms == {(Fraction(1), (2,)): 1, (Fraction(-1), (-2,)): 1}


@pytest.mark.parametrize("shift", [ShiftSpec(0, 1), ShiftSpec(Fraction(1, 4), Fraction(-1, 2))])
def test_shift_by_pi_tau_refuses_truncated_series(shift):
    truncated = theta(3, ArgSpec((1,)), 1, Fraction(1, 2))
    with pytest.raises(SeriesError):
        truncated.shift_var(0, shift)
    with pytest.raises(SeriesError):
        theta(3, ArgSpec((1,)), 1, 1).eval_var(0, shift)


def test_pi_tau_shift_comes_from_the_generator():
    # unknown high x-powers drop below q^(1/2) after z -> z + pi*tau
    shifted = theta(3, ArgSpec((1,), ShiftSpec(0, 1)), 1, Fraction(1, 2))
    assert shifted.coeff_at(Fraction(-1, 2), (-2,)) == 1
    assert shifted.coeff_at(0, (-4,)) == 1


def test_eval_var_drops_the_variable():
    series = QxSeries(2, {(0, (1, 1)): 1, (0, (-1, 1)): 1}, 6)
    value = series.eval_var(0, ShiftSpec(Fraction(1, 2)))
    assert value.dim == 1
    assert value.coeff_at(0, (1,)).is_zero()


def test_scale_tau_and_x_coefficient():
    series = QxSeries(1, {(Fraction(1, 2), (2,)): 1, (1, (0,)): 5}, 4)
    assert series.scale_tau(2).coeff_at(1, (2,)) == 1
    assert series.scale_tau(2).order == 8
    coefficient = series.x_coefficient(0, 2)
    assert coefficient.dim == 0
    assert coefficient.coeff_at(Fraction(1, 2), ()) == 1


def test_scale_multiplies_by_a_monomial():
    scaled = geometric(3).scale(cyclo_root(4, 1), 1, None)
    assert scaled.order == 4
    assert scaled.coeff_at(1, ()) == cyclo_root(4, 1)


def test_pad_and_truncate():
    series = geometric(6).pad(2)
    assert series.dim == 2
    assert series.coeff_at(3, (0, 0)) == 1
    assert series.truncate(2).order == 2
    assert series.truncate(INF) is series


def test_arg_spec_rejects_non_positive_tau_scale():
    with pytest.raises(SeriesError):
        ArgSpec((1,), ShiftSpec(), 0)


def test_power_and_sum_series():
    one_plus_q = QxSeries(0, {(0, ()): 1, (1, ()): 1})
    cube = one_plus_q ** 3
    assert [cube.coeff_at(k, ()) for k in range(4)] == [1, 3, 3, 1]
    assert sum_series([one_plus_q, -one_plus_q], 0).terms == {}


def test_pretty_and_render():
    assert pretty(phi(1, 10)) == "1 + 2*q + 2*q^4 + 2*q^9 + O(q^10)"
    text = render(QxSeries(1, {(Fraction(1, 8), (1,)): 2}, 1))
    assert text.splitlines() == ["(1/8, [1]) -> 2", "O(q^1)"]


DATA = Path(__file__).resolve().parent / "data"


@pytest.mark.parametrize(
    "golden, series",
    [
        ("theta3_quarter_shift.golden", lambda: theta(3, ArgSpec((1,), ShiftSpec(Fraction(1, 4))), 1, 2)),
        ("phi_minus_q.golden", lambda: phi(-1, 6)),
    ],
)
def test_render_matches_golden_file(golden, series):
    expected = (DATA / golden).read_text(encoding="utf-8").rstrip("\n")
    assert render(series()) == expected


def random_series(rng, dim, count=6, order=INF):
    terms = {}
    for _ in range(count):
        qexp = Fraction(rng.randint(-4, 16), 4)
        xvec = tuple(rng.randint(-3, 3) for _ in range(dim))
        terms[(qexp, xvec)] = rng.randint(-3, 3) * cyclo_root(8, rng.randrange(8))
    return QxSeries(dim, terms, order)


def same(a, b):
    diff = a - b
    return diff.is_zero_to_order(diff.order)


def test_product_order_is_sound_for_truncations():
    rng = random.Random(20240501)
    for _ in range(40):
        a, b = random_series(rng, 1), random_series(rng, 1)
        cut_a, cut_b = Fraction(rng.randint(-2, 16), 4), Fraction(rng.randint(-2, 16), 4)
        product = series_mul(a.truncate(cut_a), b.truncate(cut_b))
        exact = series_mul(a, b)
        assert exact.order == INF
        assert (product - exact).is_zero_to_order(product.order)


def test_add_and_mul_laws():
    rng = random.Random(31337)
    for _ in range(15):
        a, b, c = (random_series(rng, 2) for _ in range(3))
        assert same(a + b, b + a)
        assert same((a + b) + c, a + (b + c))
        assert same(a * b, b * a)
        assert same((a * b) * c, a * (b * c))
        assert same(a * (b + c), a * b + a * c)


def random_shift(rng):
    return ShiftSpec(Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3, 4])), Fraction(rng.randint(-4, 4), 2))


def test_repeated_shift_adds_up():
    rng = random.Random(99)
    for _ in range(25):
        series = random_series(rng, 1)
        shift = random_shift(rng)
        twice = series.shift_var(0, shift).shift_var(0, shift)
        assert same(twice, series.shift_var(0, shift.scaled(2)))


def test_evaluation_after_a_shift():
    rng = random.Random(4242)
    for _ in range(25):
        series = random_series(rng, 2)
        first, second = random_shift(rng), random_shift(rng)
        v = rng.randrange(2)
        combined = series.eval_var(v, first + second)
        assert combined.dim == 1
        assert same(series.shift_var(v, first).eval_var(v, second), combined)


def test_pi_shift_keeps_truncated_order():
    rng = random.Random(5)
    series = random_series(rng, 1, order=3)
    shifted = series.shift_var(0, ShiftSpec(Fraction(1, 3)))
    assert shifted.order == 3
    assert same(shifted.shift_var(0, ShiftSpec(Fraction(-1, 3))), series)

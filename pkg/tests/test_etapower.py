import pytest

from engine.etapower import (
    PhaseCollapseError,
    coefficient_table,
    cor_q1,
    cor_q2,
    crosscheck,
    euler_pow,
)

# (q; q)^2 from a direct expansion
ETA_SQUARED = [1, -2, -1, 2, 1, 2, -2, 0]


def test_euler_product_oracle():
    assert euler_pow(2, 1, 8).coeffs == ETA_SQUARED
    assert euler_pow(4, 1, 4).coeffs == [1, -4, 2, 8]
    assert euler_pow(2, 2, 6).coeffs == [1, 0, -2, 0, -1, 0]


def test_euler_rejects_odd_or_non_positive_powers():
    with pytest.raises(ValueError):
        euler_pow(3, 1, 10)
    with pytest.raises(ValueError):
        euler_pow(0, 1, 10)


@pytest.mark.parametrize("n, order", [(1, 30), (2, 40), (3, 30)])
def test_first_lattice_formula(n, order):
    assert cor_q1(n, order).coeffs == euler_pow(2 * n, 1, order).coeffs


@pytest.mark.parametrize("n, order", [(1, 30), (2, 41), (3, 30)])
def test_second_lattice_formula(n, order):
    assert cor_q2(n, order).coeffs == euler_pow(2 * n, 2 * n, order).coeffs


def test_formulas_do_not_depend_on_the_multiplier():
    assert cor_q1(1, 20, m=3).coeffs == cor_q1(1, 20).coeffs
    assert cor_q1(2, 12, m=2).coeffs == cor_q1(2, 12).coeffs
    assert cor_q2(1, 20, m=2).coeffs == cor_q2(1, 20).coeffs


def test_fractional_order_counts_partial_coefficients():
    result = cor_q1(1, "15/2")
    assert len(result.coeffs) == 8
    assert result.coeffs == ETA_SQUARED


def test_printed_second_formula_leaves_fractional_exponents():
    with pytest.raises(PhaseCollapseError):
        cor_q2(1, 10, form="printed")


def test_unknown_form_is_rejected():
    with pytest.raises(ValueError):
        cor_q2(1, 10, form="other")


def test_crosscheck_passes():
    report = crosscheck(2, 20)
    assert report.passed
    assert report.name == "etapow"
    assert crosscheck(1, 20, workers=2).passed


def test_coefficient_table():
    table = coefficient_table(1, 8)
    assert list(table.columns) == ["k", "euler", "cor_q1", "cor_q2", "agree"]
    assert table["euler"].tolist() == ETA_SQUARED
    assert table["cor_q2"].tolist() == ETA_SQUARED
    assert table["agree"].all()


def test_coefficient_table_subset_of_methods():
    table = coefficient_table(2, 10, methods=("euler", "cor-q1"))
    assert list(table.columns) == ["k", "euler", "cor_q1", "agree"]
    assert table["agree"].all()

import itertools
from fractions import Fraction

import pytest

from engine.qxseries import ArgSpec, ShiftSpec
from engine.circsum import (
    CATALOG,
    CircularSumError,
    LatticeSumSpec,
    YSpec,
    case1_spec,
    case2_spec,
    float_residual,
    gc_constant,
    h_coeff,
    h_m2_closed,
    lattice_points,
    preset_ys,
    resolve_params,
    verify_fund,
    verify_named,
)
from engine.thetakernel import theta


FUND_CASES = [(2, 1, "zero"), (4, 1, "zero")] + [
    (m, n, preset) for m, n in [(1, 2), (2, 2), (1, 4), (2, 3), (3, 2)] for preset in ("zero", "pi4", "pitau2")
]


@pytest.mark.parametrize("m, n, preset", FUND_CASES)
def test_fundamental_identity(m, n, preset):
    report = verify_fund(LatticeSumSpec(m, n, preset_ys(preset, n), 20))
    assert report.verdict == "pass", report.detail
    assert report.order >= 20


@pytest.mark.parametrize("m", [1, 2, 3])
def test_fundamental_identity_with_formal_shift(m):
    spec = LatticeSumSpec(m, 2, preset_ys("formal", 2, 2), 20)
    assert verify_fund(spec).passed


def test_both_circular_cases():
    ys = preset_ys("zero", 3)
    assert case1_spec(1, 3, ys, 10).m == 2
    assert verify_fund(case1_spec(1, 3, ys, 10)).passed
    assert case2_spec(3, 1, preset_ys("pi4", 2), 10).n == 2
    assert verify_fund(case2_spec(3, 1, preset_ys("pi4", 2), 10)).passed


@pytest.mark.parametrize("m, n", [(1, 1), (3, 1), (1, 3), (3, 5)])
def test_odd_mn_is_rejected(m, n):
    with pytest.raises(CircularSumError):
        LatticeSumSpec(m, n, preset_ys("zero", n), 10)


def test_shifts_must_sum_to_zero():
    ys = (YSpec((0,), ShiftSpec(Fraction(1, 4))), YSpec((0,)))
    with pytest.raises(CircularSumError):
        LatticeSumSpec(1, 2, ys, 10)
    with pytest.raises(CircularSumError):
        LatticeSumSpec(1, 2, preset_ys("zero", 3), 10)


def test_single_theta_coefficient_is_constant():
    for m in (1, 2, 3, 4):
        spec = LatticeSumSpec(2 * m, 1, preset_ys("zero", 1), 10)
        assert h_coeff(spec).terms == {(Fraction(0), (0,)): 2 * m}


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_two_factor_coefficient_closed_form(m):
    spec = LatticeSumSpec(m, 2, preset_ys("formal", 2, 2), 20)
    assert (h_coeff(spec) - h_m2_closed(m, 20)).is_zero_to_order(20)


def test_lattice_points():
    assert sorted(lattice_points(2, 1, [0, 0], Fraction(1, 2), 1)) == [(0, 1), (1, 0)]
    assert list(lattice_points(0, 0, [], 1, 5)) == [()]
    points = list(lattice_points(3, 0, [0, 0, 0], 1, 2))
    assert all(sum(p) == 0 and sum(v * v for v in p) <= 2 for p in points)
    assert len(points) == 7


def test_gc_constant_for_n1():
    expected = theta(2, ArgSpec((), ShiftSpec(), 2), 0, 10).scale(2)
    assert (gc_constant(1, 10) - expected).is_zero_to_order(10)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_identity(name):
    report = verify_named(name)
    assert report.verdict == CATALOG[name].expect, (report.first_bad, report.detail)


def test_misprinted_modular_relation_fails_at_q3():
    report = verify_named("mod-d", {"form": "printed"})
    assert report.verdict == "fail"
    qexp, xvec, coeff = report.first_bad
    assert qexp == 3
    assert xvec == ()
    assert coeff == -16


def test_modular_relation_through_other_relations():
    assert verify_named("mod-d", {"via": "bc"}).passed


@pytest.mark.parametrize("params", [{"n": "1"}, {"n": "3"}])
def test_square_sums_for_other_n(params):
    assert verify_named("gc", params, 12).passed
    assert verify_named("theta1-sum", params, 12).passed


def test_boona_for_several_m():
    for m in (1, 2, 3, 4):
        assert verify_named("boona", {"m": m}, 20).passed


def test_period_checks_other_parameters():
    assert verify_named("fund-period-pi", {"m": 1, "n": 2, "ys": "zero"}).passed
    assert verify_named("fund-period-pitau", {"m": 1, "n": 2, "ys": "zero"}).passed
    report = verify_named("fund-period-pi", {"m": 1, "n": 3})
    assert report.verdict == "error"
    assert "not circular" in report.detail


def test_resolve_params():
    assert resolve_params("fund", {"m": "3"}) == {"m": 3, "n": 2, "ys": "pi4"}
    with pytest.raises(CircularSumError):
        resolve_params("fund", {"k": 1})
    with pytest.raises(CircularSumError):
        resolve_params("fund", {"m": "two"})
    with pytest.raises(CircularSumError):
        resolve_params("fund", {"ys": "bogus"})
    with pytest.raises(CircularSumError):
        resolve_params("nope")


def test_report_dictionary():
    data = verify_named("mod-d", {"form": "printed"}, 10).to_dict()
    assert data["verdict"] == "fail"
    assert data["order"] == "10"
    assert data["firstBad"] == {"qexp": "3", "xvec": [], "coeff_basis": ["-16"], "cyclo_order": 1}
    assert data["wallTimeSec"] >= 0


def test_float_residual_is_tiny():
    assert abs(float_residual("prop-m1", None, 30, 0.2 + 0.9j, [0.3 + 0.1j, 0.2])) < 1e-9
    assert abs(float_residual("fund", None, 20, 0.1 + 1.1j, [0.25])) < 1e-9


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_two_variable_sum_for_each_m(m):
    report = verify_named("2m1", {"m": m}, 20)
    assert report.passed, (report.first_bad, report.detail)


@pytest.mark.parametrize("m, n", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_quarter_shift_coefficient_is_an_eta_quotient(m, n):
    report = verify_named("h-2m2n", {"m": m, "n": n}, 12)
    assert report.passed, (report.first_bad, report.detail)


def test_coefficient_is_symmetric_in_the_shifts():
    ys = (
        YSpec((0,), ShiftSpec(Fraction(1, 4), Fraction(1, 2))),
        YSpec((0,), ShiftSpec(Fraction(-1, 4))),
        YSpec((0,), ShiftSpec(0, Fraction(-1, 2))),
    )
    base = h_coeff(LatticeSumSpec(2, 3, ys, 10))
    for perm in itertools.permutations(ys):
        other = h_coeff(LatticeSumSpec(2, 3, perm, 10))
        assert (other - base).is_zero_to_order(10), perm


@pytest.mark.parametrize("tau", [0.3j, 0.1 + 0.3j])
@pytest.mark.parametrize("z", [0j, 0.2 + 0.1j])
@pytest.mark.parametrize("name", ["boona", "prop-m1", "prop-4z", "mod-a", "mod-c", "mod-f", "q1-prod"])
def test_float_values_agree(name, z, tau):
    assert abs(float_residual(name, None, 40, tau, [z, 0.15])) < 1e-9


def test_float_residual_sees_a_misprint():
    assert abs(float_residual("mod-d", {"form": "printed"}, 40, 0.3j)) > 1e-3
    assert abs(float_residual("mod-d", None, 40, 0.3j)) < 1e-9

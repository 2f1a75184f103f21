from fractions import Fraction
from pathlib import Path

import pytest

from engine.circsum import CircularSumError, verify_named
from engine.qxseries import pretty
from identity.elaborate import DSLSemanticError, RunnableCheck, elaborate, expression_series
from identity.parser import Num, Ref, parse, parse_expr
from identity.runner import exit_status, run_catalog, run_check, summarize, verify_source

CATALOG_FILE = Path(__file__).resolve().parent.parent / "catalog" / "theta_identities.thid"

# Script names whose native catalog counterpart takes non-default parameters.
NATIVE_NAMES = {
    "gc-n1": ("gc", {"n": 1}),
    "theta1-sum-n1": ("theta1-sum", {"n": 1}),
    "mod-d-printed": ("mod-d", {"form": "printed"}),
    "fund-zero-m2n2": ("fund", {"m": 2, "n": 2, "ys": "zero"}),
}
SCRIPT_ONLY = {"theta3-period", "triple-theta3", "phi-f", "psi-f"}


def test_catalog_script_agrees_with_native_catalog():
    reports = verify_source(CATALOG_FILE.read_text(encoding="utf-8"))
    by_name = {r.name: r for r in reports}
    assert {"fund", "fund-zero-m2n2", "fund-period-pi", "fund-period-pitau"} <= set(by_name)
    assert by_name["mod-d-printed"].verdict == "fail"
    assert by_name["mod-d-printed"].first_bad[0] == 3
    for name, report in by_name.items():
        if name in SCRIPT_ONLY:
            assert report.passed, name
            continue
        native_name, params = NATIVE_NAMES.get(name, (name, None))
        native = verify_named(native_name, params, report.order)
        assert report.verdict == native.verdict, name
        if native.first_bad is not None:
            assert report.first_bad[0] == native.first_bad[0]


def test_two_variable_identity():
    text = """
    identity prop-m1 {
        order 20;
        vars z, y;
        theta3(z + y | tau)*theta3(z - y | tau) - theta4(z + y | tau)*theta4(z - y | tau)
            == 2*theta2(2*y | 2*tau)*theta2(2*z | 2*tau)
    }
    """
    checks = elaborate(parse(text))
    assert checks[0].dim == 2
    reports = verify_source(text)
    assert [r.verdict for r in reports] == ["pass"]


def test_perturbed_identity_reports_first_mismatch():
    reports = verify_source("identity bad { order 30; phi(q)*psi(q^2) == psi(q)^2 + q^7 }")
    assert reports[0].verdict == "fail"
    qexp, xvec, coeff = reports[0].first_bad
    assert (qexp, xvec) == (7, ())
    assert coeff == -1
    assert exit_status(reports) == 1


def test_empty_script_runs_nothing():
    reports = verify_source("# nothing to check\n")
    assert reports == []
    assert exit_status(reports) == 0


def test_order_override():
    reports = verify_source("identity a { order 30; phi(q) == f(q, q) }", order=Fraction(12))
    assert reports[0].order == 12
    assert reports[0].passed


def test_zero_power_is_rejected():
    with pytest.raises(DSLSemanticError) as info:
        elaborate(parse("identity p { order 5; phi(q)^0 == 1 }"))
    assert info.value.statement == "p"


def test_fractional_powers_only_for_q():
    assert verify_source("identity h { order 10; q^(1/2)*q^(1/2) == q }")[0].passed
    with pytest.raises(DSLSemanticError):
        elaborate(parse("identity p { order 5; phi(q)^(1/2) == 1 }"))


@pytest.mark.parametrize(
    "arg",
    ["z/2 | tau", "z + 1 | tau", "z | -tau", "z | z", "z*z | tau", "z + pi*pi | tau"],
)
def test_semantic_errors_in_arguments(arg):
    text = f"identity s {{ order 5; vars z; theta3({arg}) == theta3(z | tau) }}"
    with pytest.raises(DSLSemanticError):
        elaborate(parse(text))


def test_odd_alternating_sum_warns():
    text = "identity w { order 10; vars z; sum k in 0..2 sign (-1)^k: theta3(z + k*pi/3 | tau) == theta3(z | tau) }"
    checks = elaborate(parse(text))
    assert len(checks[0].warnings) == 1
    assert "3 terms" in checks[0].warnings[0]


def test_monomial_atoms_multiply():
    assert verify_source("identity d { order 10; f(q, q^(-1)*q^2) == f(q, q) }")[0].passed


def test_vanishing_pochhammer_fails_at_the_constant_term():
    report = verify_source("identity n { order 10; poch(q^(-1); q) == 1 }")[0]
    assert report.verdict == "fail"
    assert report.first_bad[0] == 0


def test_failure_while_building_becomes_an_error_report():
    check = RunnableCheck("broken", Fraction(5), (), Ref("k"), Num(Fraction(1)))
    report = run_check(check)
    assert report.verdict == "error"
    assert report.detail.startswith("KeyError")


def test_expression_series():
    assert pretty(expression_series(parse_expr("phi(q)"), 10)) == "1 + 2*q + 2*q^4 + 2*q^9 + O(q^10)"
    series = expression_series(parse_expr("theta3(z | tau)", ["z"]), 2, ["z"])
    assert pretty(series, ["z"]) == "1 + q^(1/2)*z^(-2) + q^(1/2)*z^2 + O(q^2)"


def test_run_catalog_in_input_order():
    reports = run_catalog(["mod-c", "mod-a", "mod-b"], order=40, workers=2)
    assert [r.name for r in reports] == ["mod-c", "mod-a", "mod-b"]
    assert summarize(reports) == {"pass": 3, "fail": 0, "error": 0}


def test_run_catalog_params_need_one_name():
    with pytest.raises(ValueError):
        run_catalog(["mod-a", "mod-b"], params={"m": "2"})
    with pytest.raises(CircularSumError):
        run_catalog(["boona"], params={"k": "2"})
    with pytest.raises(CircularSumError):
        run_catalog(["unknown"])


def test_run_catalog_with_params():
    reports = run_catalog(["boona"], order=12, params={"m": "3"})
    assert reports[0].params == "m=3"
    assert reports[0].passed

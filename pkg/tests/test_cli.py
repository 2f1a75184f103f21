import json

import pytest

from cli import USAGE_ERROR, main


def test_catalog_subset(capsys):
    assert main(["catalog", "--only", "mod-a,mod-b", "--order", "100"]) == 0


def test_catalog_list(capsys):
    assert main(["catalog", "--list"]) == 0
    out = capsys.readouterr().out
    assert "fund" in out
    assert "mod-f" in out


def test_catalog_failure_exits_with_one(tmp_path):
    report = tmp_path / "mod-d.json"
    assert main(["catalog", "--only", "mod-d", "--params", "form=printed", "--order", "10",
                 "--report", str(report)]) == 1
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["reports"][0]["firstBad"]["qexp"] == "3"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["catalog", "--params", "m=2"],
        ["catalog", "--only", "nope"],
        ["catalog", "--only", "boona", "--params", "m"],
        ["catalog", "--order", "0.5"],
        ["etapow", "--n", "0", "--order", "5"],
        ["expand", "theta5(z | tau)", "--vars", "z"],
        ["h-coeff", "--m", "1", "--n", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == USAGE_ERROR


def test_expand(capsys):
    assert main(["expand", "phi(q)", "--order", "10"]) == 0
    assert capsys.readouterr().out.strip() == "1 + 2*q + 2*q^4 + 2*q^9 + O(q^10)"


def test_h_coeff(capsys):
    assert main(["h-coeff", "--m", "2", "--n", "1", "--y", "zero", "--order", "5"]) == 0
    assert capsys.readouterr().out.strip() == "2 + O(q^5)"
    assert main(["h-coeff", "--m", "1", "--n", "2", "--y", "pi/4, -pi/4", "--order", "5"]) == 0


def test_etapow_all_methods(tmp_path, capsys):
    table = tmp_path / "etapow.csv"
    assert main(["etapow", "--n", "2", "--order", "40", "--method", "all", "--csv", str(table)]) == 0
    assert table.read_text(encoding="utf-8").splitlines()[0] == "k,euler,cor_q1,cor_q2,agree"


def test_etapow_single_method(capsys):
    assert main(["etapow", "--n", "1", "--order", "8", "--method", "cor-q1"]) == 0
    assert capsys.readouterr().out.strip() == "1 -2 -1 2 1 2 -2 0"


def test_etapow_printed_form_exits_with_one():
    assert main(["etapow", "--n", "1", "--order", "10", "--method", "cor-q2", "--form", "printed"]) == 1


def test_verify_writes_report(tmp_path):
    script = tmp_path / "checks.thid"
    script.write_text(
        "identity mod-c { order 50; phi(q) + phi(-q) == 2*phi(q^4) }\n"
        "identity psi-f { order 30; psi(q) == f(q, q^3) }\n",
        encoding="utf-8",
    )
    report = tmp_path / "report.json"
    assert main(["verify", str(script), "--report", str(report)]) == 0
    data = json.loads(report.read_text(encoding="utf-8"))
    assert [r["name"] for r in data["reports"]] == ["mod-c", "psi-f"]
    assert data["summary"]["passed"] == 2


def test_verify_syntax_error(tmp_path, capsys):
    script = tmp_path / "broken.thid"
    script.write_text("identity a { order 5; phi(q) == }\n", encoding="utf-8")
    assert main(["verify", str(script)]) == USAGE_ERROR
    assert "line 1" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert main(["verify", str(tmp_path / "missing.thid")]) == USAGE_ERROR

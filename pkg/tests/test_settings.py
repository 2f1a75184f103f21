from fractions import Fraction

from utils import settings


def test_defaults(monkeypatch):
    for key in ("THETA_DEFAULT_ORDER", "THETA_WORKERS", "THETA_REPORT_DIR", "THETA_FLOAT_TOL"):
        monkeypatch.delenv(key, raising=False)
    assert settings.default_order() == 20
    assert settings.default_workers() == 1
    assert settings.report_dir() == "reports"
    assert settings.float_tolerance() == 1e-9


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("THETA_DEFAULT_ORDER", "15/2")
    monkeypatch.setenv("THETA_WORKERS", "4")
    assert settings.default_order() == Fraction(15, 2)
    assert settings.default_workers() == 4


def test_bad_worker_count_falls_back(monkeypatch):
    monkeypatch.setenv("THETA_VERBOSE", "0")
    monkeypatch.setenv("THETA_WORKERS", "many")
    assert settings.default_workers() == 1


def test_log_respects_verbosity(monkeypatch, capsys):
    monkeypatch.setenv("THETA_VERBOSE", "1")
    settings.log("three checks passed", "ok")
    assert capsys.readouterr().out == "✅ three checks passed\n"
    monkeypatch.setenv("THETA_VERBOSE", "0")
    settings.log("hidden")
    assert capsys.readouterr().out == ""

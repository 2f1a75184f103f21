import os
from fractions import Fraction

from dotenv import load_dotenv

load_dotenv()

ICONS = {"ok": "✅", "fail": "❌", "warn": "⚠️", "run": "🔄", "stats": "📊"}


def default_order():
    """Truncation order used when neither the command line nor a statement gives one"""
    return Fraction(os.getenv('THETA_DEFAULT_ORDER', '20'))


def default_workers():
    try:
        return max(1, int(os.getenv('THETA_WORKERS', '1')))
    except ValueError:
        log("THETA_WORKERS is not an integer, using 1 worker", "warn")
        return 1


def report_dir():
    return os.getenv('THETA_REPORT_DIR', 'reports')


def float_tolerance():
    return float(os.getenv('THETA_FLOAT_TOL', '1e-9'))


def verbose():
    return os.getenv('THETA_VERBOSE', '1').strip().lower() not in ('0', 'false', 'no', '')


def log(message, level="run"):
    """
    Print one progress line tagged with the emoji for its level.
    THETA_VERBOSE=0 silences everything.
    """
    if not verbose():
        return
    print(f"{ICONS.get(level, ICONS['run'])} {message}")

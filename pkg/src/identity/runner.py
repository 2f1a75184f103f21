"""
Runs elaborated checks and catalog identities, optionally on a thread pool.
Results always come back in input order.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from engine.circsum import CATALOG, CheckReport, compare_sides, error_report, resolve_params, verify_named
from identity.elaborate import RunnableCheck, elaborate
from identity.parser import parse
from utils.settings import log


def run_check(check: RunnableCheck) -> CheckReport:
    """Build both sides of one check; anything raised while building becomes an error report"""
    started = time.perf_counter()
    try:
        lhs, rhs = check.sides()
        return compare_sides(check.name, check.params, lhs, rhs, check.order, started)
    except Exception as exc:
        return error_report(check.name, check.params, check.order, exc, started)


def log_report(report: CheckReport) -> None:
    level = "ok" if report.passed else "fail"
    line = f"{report.name} [{report.params or '-'}] order {report.order}: {report.verdict} ({report.wall_time:.3f}s)"
    if report.first_bad is not None:
        qexp, xvec, coeff = report.first_bad
        line += f", first mismatch at q^{qexp} x^{list(xvec)}: {coeff.render()}"
    if report.detail:
        line += f", {report.detail}"
    log(line, level)


def _map(func, items: Sequence, workers: int) -> List:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def run(checks: Sequence[RunnableCheck], workers: int = 1) -> List[CheckReport]:
    checks = list(checks)
    for check in checks:
        for warning in check.warnings:
            log(warning, "warn")
    log(f"Running {len(checks)} check(s) with {workers} worker(s)", "run")
    reports = _map(run_check, checks, workers)
    for report in reports:
        log_report(report)
    log_summary(reports)
    return reports


def verify_source(text: str, order=None, workers: int = 1) -> List[CheckReport]:
    """Parse, elaborate and run every statement of an identity file."""
    return run(elaborate(parse(text), order), workers)


def run_catalog(names: Optional[Iterable[str]] = None, order=None, params: Optional[Dict] = None,
                workers: int = 1) -> List[CheckReport]:
    """
    Verify catalog identities by name, all of them when names is empty.
    Params apply to every selected entry, so they are only accepted with a
    single name.
    """
    selected = list(names) if names else list(CATALOG)
    if params and len(selected) != 1:
        raise ValueError("params need exactly one catalog identity")
    for name in selected:
        resolve_params(name, params)
    log(f"Verifying {len(selected)} catalog identit{'y' if len(selected) == 1 else 'ies'}", "run")
    jobs: List[Tuple[str, Optional[Dict]]] = [(name, params) for name in selected]
    reports = _map(lambda job: verify_named(job[0], job[1], order), jobs, workers)
    for report in reports:
        log_report(report)
    log_summary(reports)
    return reports


def summarize(reports: Sequence[CheckReport]) -> Dict[str, int]:
    counts = {"pass": 0, "fail": 0, "error": 0}
    for report in reports:
        counts[report.verdict] = counts.get(report.verdict, 0) + 1
    return counts


def log_summary(reports: Sequence[CheckReport]) -> None:
    counts = summarize(reports)
    total = sum(r.wall_time for r in reports)
    log(f"{counts['pass']} passed, {counts['fail']} failed, {counts['error']} errors in {total:.2f}s", "stats")


def exit_status(reports: Sequence[CheckReport]) -> int:
    """0 when everything passed, 1 otherwise."""
    return 0 if all(r.passed for r in reports) else 1

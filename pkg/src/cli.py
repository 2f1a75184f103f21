"""
Command-line entry point.

    python src/cli.py verify catalog/theta_identities.thid --report out.json
    python src/cli.py catalog --only mod-a,mod-b --order 100
    python src/cli.py expand "phi(q)" --order 10
    python src/cli.py h-coeff --m 2 --n 2 --y "pi/4, -pi/4" --order 20
    python src/cli.py etapow --n 2 --order 40 --method all --csv etapow.csv

Exit status: 0 when every check passes, 1 on a failed or erroring check,
2 on usage errors.
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from components.report_generator import write_csv_table, write_json_report, write_pdf_report
from engine.circsum import CATALOG, LatticeSumSpec, h_coeff, preset_ys
from engine.etapower import METHODS, PhaseCollapseError, coefficient_table, cor_q1, cor_q2, crosscheck, euler_pow
from engine.qxseries import pretty
from identity.elaborate import DSLSemanticError, expression_series
from identity.parser import DSLError, parse_expr
from identity.runner import exit_status, log_report, run_catalog, verify_source
from utils.data_processor import parse_params, parse_rat, parse_y_specs
from utils.settings import default_order, default_workers, log

USAGE_ERROR = 2


def positive_rat(text: str):
    value = parse_rat(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"order must be positive, got {text}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cli.py", description="Exact verification of theta function circular summation identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run every identity of a .thid script")
    verify.add_argument("file", type=Path)
    verify.add_argument("--order", type=positive_rat, help="Override every statement's order")
    verify.add_argument("--report", type=Path, help="Write a JSON report")
    verify.add_argument("--pdf", type=Path, help="Write a PDF summary")
    verify.add_argument("--workers", type=positive_int, default=None)

    catalog = sub.add_parser("catalog", help="Verify the built-in identity catalog")
    catalog.add_argument("--only", default="", help="Comma separated catalog names")
    catalog.add_argument("--order", type=positive_rat, help="Override each entry's default order")
    catalog.add_argument("--params", default="", help="key=value list, e.g. m=3,n=2 (one entry only)")
    catalog.add_argument("--list", action="store_true", help="List catalog entries and exit")
    catalog.add_argument("--report", type=Path, help="Write a JSON report")
    catalog.add_argument("--pdf", type=Path, help="Write a PDF summary")
    catalog.add_argument("--workers", type=positive_int, default=None)

    expand = sub.add_parser("expand", help="Print the series of an expression")
    expand.add_argument("expr")
    expand.add_argument("--order", type=positive_rat, default=None)
    expand.add_argument("--vars", default="", help="Comma separated variable names, e.g. z,y")

    hco = sub.add_parser("h-coeff", help="Print the coefficient series H_{m,n}")
    hco.add_argument("--m", type=positive_int, required=True)
    hco.add_argument("--n", type=positive_int, required=True)
    hco.add_argument("--y", default="zero",
                     help="Shift list such as \"pi/4, -pi/4\" or a preset: zero, pi4, pitau2, formal")
    hco.add_argument("--order", type=positive_rat, default=None)

    eta = sub.add_parser("etapow", help="Powers of the Euler product by product and lattice sums")
    eta.add_argument("--n", type=positive_int, required=True)
    eta.add_argument("--order", type=positive_rat, required=True)
    eta.add_argument("--method", choices=list(METHODS) + ["all"], default="all")
    eta.add_argument("--m", type=positive_int, default=1, help="Lattice multiplier; results do not depend on it")
    eta.add_argument("--form", choices=["derived", "printed"], default="derived",
                     help="Variant of the second lattice formula")
    eta.add_argument("--csv", type=Path, help="Write the coefficient table as CSV")
    return parser


def _write_reports(reports, args) -> None:
    if getattr(args, "report", None):
        write_json_report(reports, args.report)
    if getattr(args, "pdf", None):
        if write_pdf_report(reports, args.pdf) is None:
            log(f"PDF report could not be written to {args.pdf}", "warn")


def cmd_verify(args) -> int:
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        log(f"Cannot read {args.file}: {exc}", "fail")
        return USAGE_ERROR
    try:
        reports = verify_source(text, args.order, args.workers or default_workers())
    except DSLError as exc:
        print(exc.format_message(), file=sys.stderr)
        return USAGE_ERROR
    except DSLSemanticError as exc:
        log(f"Semantic error in {exc}", "fail")
        return USAGE_ERROR
    _write_reports(reports, args)
    return exit_status(reports)


def cmd_catalog(args) -> int:
    if args.list:
        for name, entry in CATALOG.items():
            defaults = ", ".join(f"{k}={v}" for k, v in entry.defaults.items()) or "-"
            print(f"{name:20s} order {str(entry.default_order):>4s}  [{defaults}]  {entry.description}")
        return 0
    names = [n.strip() for n in args.only.split(",") if n.strip()]
    try:
        params = parse_params(args.params)
        reports = run_catalog(names, args.order, params or None, args.workers or default_workers())
    except ValueError as exc:
        log(str(exc), "fail")
        return USAGE_ERROR
    _write_reports(reports, args)
    return exit_status(reports)


def cmd_expand(args) -> int:
    variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    order = args.order if args.order is not None else default_order()
    try:
        series = expression_series(parse_expr(args.expr, variables), order, variables)
    except DSLError as exc:
        print(exc.format_message(), file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        log(str(exc), "fail")
        return USAGE_ERROR
    print(pretty(series, variables or None))
    return 0


def cmd_h_coeff(args) -> int:
    order = args.order if args.order is not None else default_order()
    try:
        if args.y.strip() in ("zero", "pi4", "pitau2", "formal"):
            dim = 2 if args.y.strip() == "formal" else 1
            ys = preset_ys(args.y.strip(), args.n, dim)
        else:
            ys = parse_y_specs(args.y)
        spec = LatticeSumSpec(args.m, args.n, ys, order)
        series = h_coeff(spec)
    except DSLError as exc:
        print(exc.format_message(), file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        log(str(exc), "fail")
        return USAGE_ERROR
    names = ["z", "y"][: series.dim]
    print(pretty(series, names))
    return 0


def cmd_etapow(args) -> int:
    n, order = args.n, args.order
    try:
        if args.method == "all":
            report = crosscheck(n, order)
            log_report(report)
            table = coefficient_table(n, order)
            print(table.to_string(index=False))
            if args.csv:
                write_csv_table(table, args.csv)
            return 0 if report.passed and bool(table["agree"].all()) else 1
        if args.method == "euler":
            result = euler_pow(2 * n, 1, order)
        elif args.method == "cor-q1":
            result = cor_q1(n, order, args.m)
        else:
            result = cor_q2(n, order, args.m, args.form)
    except PhaseCollapseError as exc:
        log(f"Phases did not collapse: {exc}", "fail")
        return 1
    except ValueError as exc:
        log(str(exc), "fail")
        return USAGE_ERROR
    print(" ".join(str(c) for c in result.coeffs))
    if args.csv:
        write_csv_table(pd.DataFrame({"k": range(len(result.coeffs)), result.method: result.coeffs}), args.csv)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "expand": cmd_expand,
    "h-coeff": cmd_h_coeff,
    "etapow": cmd_etapow,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

from fractions import Fraction

import pandas as pd

from engine.circsum import YSpec
from identity.elaborate import SeriesBuilder
from identity.parser import parse_arg


def parse_rat(text):
    """
    Read an exact rational from text such as "20", "-3/8" or "5/2"

    Raises:
        ValueError: when the text is not an integer or a fraction p/q
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    cleaned = str(text).strip()
    if not cleaned or any(ch in cleaned for ch in '.eE'):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}")


def parse_params(text):
    """
    Turn "m=2, n=3, ys=pi4" into {'m': '2', 'n': '3', 'ys': 'pi4'}.
    Values stay strings; the catalog validates and converts them.
    """
    params = {}
    if not text or not text.strip():
        return params
    for item in text.split(','):
        if not item.strip():
            continue
        key, sep, value = item.partition('=')
        if not sep or not key.strip() or not value.strip():
            raise ValueError(f"expected key=value, got {item.strip()!r}")
        params[key.strip()] = value.strip()
    return params


def parse_y_specs(text, variables=("z", "y")):
    """
    Parse a comma separated list of shifts like "pi/4, -pi/4" or "y, -y".

    Slot 0 always belongs to z. When no shift mentions a second variable the
    specs are one-dimensional.
    """
    if not text or not text.strip():
        raise ValueError("empty shift list")
    builder = SeriesBuilder(variables, "shifts")
    specs = []
    for piece in text.split(','):
        spec = builder.arg_spec(parse_arg(piece, variables), {})
        specs.append(YSpec(spec.linear, spec.shift))
    if all(not any(s.linear[1:]) for s in specs):
        specs = [YSpec(s.linear[:1], s.shift) for s in specs]
    return tuple(specs)


def reports_to_frame(reports):
    """One row per CheckReport, in report order"""
    rows = []
    for report in reports:
        data = report.to_dict()
        first_bad = data.get('firstBad')
        rows.append({
            'name': data['name'],
            'params': data['params'],
            'order': data['order'],
            'verdict': data['verdict'],
            'first_bad_qexp': first_bad['qexp'] if first_bad else '',
            'first_bad_coeff': report.first_bad[2].render() if report.first_bad else '',
            'seconds': data['wallTimeSec'],
            'detail': data.get('detail', ''),
        })
    columns = ['name', 'params', 'order', 'verdict', 'first_bad_qexp', 'first_bad_coeff', 'seconds', 'detail']
    return pd.DataFrame(rows, columns=columns)


def series_to_frame(series, names=()):
    """Coefficient table of a series: one row per stored (q-exponent, x-vector) term"""
    rows = []
    for (qexp, xvec), coeff in series.sorted_terms():
        row = {'qexp': str(qexp)}
        for idx, power in enumerate(xvec):
            label = names[idx] if idx < len(names) else f"x{idx + 1}"
            row[f"{label}^"] = power
        row['coefficient'] = coeff.render()
        rows.append(row)
    return pd.DataFrame(rows)


def get_verification_summary(reports):
    """
    Summary numbers for a batch of reports: counts per verdict, pass rate and
    the slowest check.
    """
    total = len(reports)
    counts = {'pass': 0, 'fail': 0, 'error': 0}
    for report in reports:
        counts[report.verdict] = counts.get(report.verdict, 0) + 1
    slowest = max(reports, key=lambda r: r.wall_time) if reports else None
    return {
        'total': total,
        'passed': counts['pass'],
        'failed': counts['fail'],
        'errors': counts['error'],
        'pass_rate': round(100.0 * counts['pass'] / total, 1) if total else 100.0,
        'total_seconds': round(sum(r.wall_time for r in reports), 3),
        'slowest': slowest.name if slowest else None,
        'status': 'success' if counts['pass'] == total else 'attention',
    }

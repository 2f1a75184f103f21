"""
Powers of the Euler product from two lattice-sum formulas, checked against
a direct product oracle.

    (q; q)^(2n)       = q^(-m^2 n) (q^2n; q^2n) sum_{sum s = 2mn} q^(|s|^2/2) zeta_4n^(E(s))
    (q^2n; q^2n)^(2n) = q^(-m^2 n^2/2) (q; q) sum_{sum s = mn} q^(n|s|^2 + E(s)/2)

with s in Z^2n and E(s) = sum_{l=1}^{n} (s_l - s_{n+l})(2l - 1). Neither side
depends on the multiplier m.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

import pandas as pd

from engine.circsum import CheckReport, error_report, lattice_points
from engine.exactnum import CycloError, CycloNum, as_rat, root_counts_to_cyclo
from engine.qxseries import QxSeries, product_to_order
from engine.thetakernel import Monomial, pochhammer

METHODS = ("euler", "cor-q1", "cor-q2")

# Extra room in the lattice bound; the exact exponent check still decides.
LATTICE_MARGIN = 1


class PhaseCollapseError(ValueError):
    """Lattice phases or exponents failed to reduce to integers"""


@dataclass
class EtaPowResult:
    n: int
    order: Fraction
    coeffs: List[int]
    method: str


def _check_positive(name: str, value: int) -> int:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return value


def _coefficient_count(order: Fraction) -> int:
    return math.ceil(order)


def _integer_coeffs(series: QxSeries, order: Fraction) -> List[int]:
    coeffs = [0] * _coefficient_count(order)
    for (qexp, _), coeff in series.terms.items():
        if qexp >= order:
            continue
        if qexp.denominator != 1:
            raise PhaseCollapseError(f"non-integral exponent q^{qexp} survived with coefficient {coeff.render()}")
        try:
            coeffs[int(qexp)] = coeff.as_integer()
        except CycloError:
            raise PhaseCollapseError(f"coefficient of q^{qexp} is {coeff.render()}, not an integer")
    return coeffs


def euler_series(e: int, base: int, order) -> QxSeries:
    """(q^base; q^base)^e as a series exact below order."""
    order = as_rat(order)
    factor = lambda o: pochhammer(Monomial(1, base, ()), base, o)
    return product_to_order([factor] * e, order)


def euler_pow(e: int, base: int, order) -> EtaPowResult:
    _check_positive("e", e)
    _check_positive("base", base)
    if e % 2:
        raise ValueError(f"e must be even, got {e}")
    order = as_rat(order)
    return EtaPowResult(e // 2, order, _integer_coeffs(euler_series(e, base, order), order), "euler")


def _phase_exponent(s, n: int) -> int:
    return sum((s[l] - s[n + l]) * (2 * l + 1) for l in range(n))


def cor_q1_series(n: int, order, m: int = 1) -> QxSeries:
    _check_positive("n", n)
    _check_positive("m", m)
    order = as_rat(order)
    shift = m * m * n
    work = order + shift
    counts: Dict[Fraction, Dict[int, int]] = {}
    for s in lattice_points(2 * n, 2 * m * n, [0] * (2 * n), Fraction(1, 2), work + LATTICE_MARGIN):
        qexp = Fraction(sum(v * v for v in s), 2)
        if qexp >= work:
            continue
        k = _phase_exponent(s, n) % (4 * n)
        bucket = counts.setdefault(qexp, {})
        bucket[k] = bucket.get(k, 0) + 1
    lattice = QxSeries._make(0, {(e, ()): root_counts_to_cyclo(4 * n, b) for e, b in counts.items()}, work)
    lattice = QxSeries._make(0, {k: c for k, c in lattice.terms.items() if not c.is_zero()}, work)
    outer = pochhammer(Monomial(1, 2 * n, ()), 2 * n, work)
    return (lattice * outer).scale(1, -shift).truncate(order)


def cor_q1(n: int, order, m: int = 1) -> EtaPowResult:
    """Coefficients of (q; q)^2n from the first lattice formula."""
    order = as_rat(order)
    return EtaPowResult(n, order, _integer_coeffs(cor_q1_series(n, order, m), order), "cor-q1")


def cor_q2_series(n: int, order, m: int = 1, form: str = "derived") -> QxSeries:
    """
    Right-hand side of the second lattice formula. form="printed" evaluates the
    variant with E(s)/4 and q^(-m^2 n/2), whose exponents do not collapse.
    """
    _check_positive("n", n)
    _check_positive("m", m)
    order = as_rat(order)
    if form == "derived":
        phase_weight, shift = Fraction(1, 2), Fraction(m * m * n * n, 2)
    elif form == "printed":
        phase_weight, shift = Fraction(1, 4), Fraction(m * m * n, 2)
    else:
        raise ValueError(f"unknown form {form!r}")
    work = order + shift
    # n (s_l + c_l)^2 completes n s_l^2 + phase_weight (2l - 1) s_l
    centers = [phase_weight * (2 * l + 1) / (2 * n) for l in range(n)]
    centers += [-c for c in centers]
    bound = work + n * sum(c * c for c in centers) + LATTICE_MARGIN
    counts: Dict[Fraction, int] = {}
    for s in lattice_points(2 * n, m * n, centers, n, bound):
        qexp = n * sum(v * v for v in s) + phase_weight * _phase_exponent(s, n)
        if qexp >= work:
            continue
        counts[qexp] = counts.get(qexp, 0) + 1
    lattice = QxSeries._make(0, {(e, ()): CycloNum.rational(c) for e, c in counts.items()}, work)
    outer = pochhammer(Monomial(1, 1, ()), 1, work)
    return (lattice * outer).scale(1, -shift).truncate(order)


def cor_q2(n: int, order, m: int = 1, form: str = "derived") -> EtaPowResult:
    """Coefficients of (q^2n; q^2n)^2n from the second lattice formula."""
    order = as_rat(order)
    return EtaPowResult(n, order, _integer_coeffs(cor_q2_series(n, order, m, form), order), "cor-q2")


def _first_mismatch(left: List[int], right: List[int]):
    for k, (a, b) in enumerate(zip(left, right)):
        if a != b:
            return k, a - b
    return None


def crosscheck(n: int, order, workers: int = 1) -> CheckReport:
    """
    Run the product oracle and both lattice formulas; report the first
    coefficient where either formula disagrees with the oracle.
    """
    order = as_rat(order)
    started = time.perf_counter()
    label = f"n={n}"
    name = "etapow"
    try:
        jobs = {
            "euler-q1": lambda: euler_pow(2 * n, 1, order),
            "euler-q2": lambda: euler_pow(2 * n, 2 * n, order),
            "cor-q1": lambda: cor_q1(n, order),
            "cor-q2": lambda: cor_q2(n, order),
        }
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {key: pool.submit(job) for key, job in jobs.items()}
                results = {key: future.result() for key, future in futures.items()}
        else:
            results = {key: job() for key, job in jobs.items()}
        for oracle, method in (("euler-q1", "cor-q1"), ("euler-q2", "cor-q2")):
            bad = _first_mismatch(results[method].coeffs, results[oracle].coeffs)
            if bad is not None:
                k, delta = bad
                return CheckReport(name, f"{label}, method={method}", order, "fail",
                                   (Fraction(k), (), CycloNum.rational(delta)), time.perf_counter() - started)
        return CheckReport(name, label, order, "pass", None, time.perf_counter() - started)
    except Exception as exc:
        return error_report(name, label, order, exc, started)


def coefficient_table(n: int, order, methods=METHODS) -> pd.DataFrame:
    """
    Coefficients of (q; q)^2n for k < order as produced by each method.
    The cor_q2 column reads (q^2n; q^2n)^2n at q^(2nk).
    """
    order = as_rat(order)
    count = _coefficient_count(order)
    table = {"k": list(range(count))}
    if "euler" in methods:
        table["euler"] = euler_pow(2 * n, 1, order).coeffs
    if "cor-q1" in methods:
        table["cor_q1"] = cor_q1(n, order).coeffs
    if "cor-q2" in methods:
        dilated = cor_q2(n, 2 * n * (count - 1) + 1).coeffs
        table["cor_q2"] = [dilated[2 * n * k] for k in range(count)]
    frame = pd.DataFrame(table)
    columns = [c for c in ("euler", "cor_q1", "cor_q2") if c in frame.columns]
    frame["agree"] = frame[columns].nunique(axis=1) == 1
    return frame

"""
Circular summations of theta-function products.

The core identity: for positive m, n with mn even and y_1 + ... + y_n = 0,

    sum_{k=0}^{mn-1} (-1)^k prod_j theta3(z + y_j + k pi / mn | tau)
        = H_{m,n}(y | tau) * theta2(mn z | m^2 n tau)

with H_{m,n} = mn q^(-m^2 n / 8) sum_{s_1 + ... + s_n = mn/2} q^(|s|^2 / 2) e^(2i s.y).
Both sides are built as truncated series and compared exactly. The module
also carries the named catalog of corollaries that specialise it.
"""

import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from engine.exactnum import CycloNum, as_rat, root_counts_to_cyclo
from engine.qxseries import (
    INF,
    ArgSpec,
    QxSeries,
    ShiftSpec,
    product_to_order,
    sum_series,
)
from engine.thetakernel import Monomial, eval_complex, phi, pochhammer, psi, theta


class CircularSumError(ValueError):
    """Raised for non-circular parameters, unknown catalog names and bad params"""


@dataclass(frozen=True)
class YSpec:
    """Shift y = linear.z + a*pi + b*pi*tau of one theta factor."""

    linear: Tuple[int, ...]
    shift: ShiftSpec = field(default_factory=ShiftSpec)

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(int(c) for c in self.linear))


@dataclass(frozen=True)
class LatticeSumSpec:
    m: int
    n: int
    ys: Tuple[YSpec, ...]
    order: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ys", tuple(self.ys))
        object.__setattr__(self, "order", as_rat(self.order))
        if self.m < 1 or self.n < 1:
            raise CircularSumError(f"m and n must be positive, got m={self.m}, n={self.n}")
        if (self.m * self.n) % 2:
            raise CircularSumError(f"the summations are not circular: mn = {self.m * self.n} is odd")
        if len(self.ys) != self.n:
            raise CircularSumError(f"expected {self.n} shifts, got {len(self.ys)}")
        dims = {len(y.linear) for y in self.ys}
        if len(dims) != 1 or dims.pop() < 1:
            raise CircularSumError("every shift needs the same dimension, with slot 0 for z")
        total_linear = [sum(col) for col in zip(*(y.linear for y in self.ys))]
        total_shift = ShiftSpec()
        for y in self.ys:
            total_shift = total_shift + y.shift
        if any(total_linear) or not total_shift.is_zero():
            raise CircularSumError("the shifts y_1 .. y_n must sum to zero")

    @property
    def mn(self) -> int:
        return self.m * self.n

    @property
    def dim(self) -> int:
        return len(self.ys[0].linear)


def case1_spec(m: int, n: int, ys: Sequence[YSpec], order) -> LatticeSumSpec:
    """m replaced by 2m: the identity holds for every n."""
    return LatticeSumSpec(2 * m, n, tuple(ys), order)


def case2_spec(m: int, n: int, ys: Sequence[YSpec], order) -> LatticeSumSpec:
    """n replaced by 2n: the identity holds for every m."""
    return LatticeSumSpec(m, 2 * n, tuple(ys), order)


@dataclass
class CheckReport:
    name: str
    params: str
    order: Fraction
    verdict: str
    first_bad: Optional[Tuple[Fraction, Tuple[int, ...], CycloNum]] = None
    wall_time: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> Dict:
        first_bad = None
        if self.first_bad is not None:
            qexp, xvec, coeff = self.first_bad
            first_bad = {
                "qexp": str(Fraction(qexp)),
                "xvec": list(xvec),
                "coeff_basis": coeff.basis_strings(),
                "cyclo_order": coeff.order,
            }
        data = {
            "name": self.name,
            "params": self.params,
            "order": str(Fraction(self.order)) if self.order != INF else "inf",
            "verdict": self.verdict,
            "firstBad": first_bad,
            "wallTimeSec": round(self.wall_time, 6),
        }
        if self.detail:
            data["detail"] = self.detail
        return data


def compare_sides(name: str, params: str, lhs: QxSeries, rhs: QxSeries, order, started: float,
                  stretch: bool = False) -> CheckReport:
    """
    Exact comparison of two sides below order. With stretch, the check runs
    up to the full order the difference is exact for.
    """
    order = as_rat(order)
    diff = lhs - rhs
    if diff.order < order:
        return CheckReport(name, params, order, "error", None, time.perf_counter() - started,
                           f"difference is only exact below q^{diff.order}")
    certified = diff.order if stretch and diff.order != INF else order
    bad = diff.first_nonzero_below(certified)
    verdict = "pass" if bad is None else "fail"
    return CheckReport(name, params, certified, verdict, bad, time.perf_counter() - started)


def error_report(name: str, params: str, order, exc: Exception, started: float) -> CheckReport:
    return CheckReport(name, params, as_rat(order) if order != INF else order, "error", None,
                       time.perf_counter() - started, f"{type(exc).__name__}: {exc}")


# lattice enumeration


def lattice_points(count: int, target: int, centers: Sequence, weight, bound) -> Iterator[Tuple[int, ...]]:
    """
    Integer vectors s of length count with sum(s) == target and
    weight * sum((s_j + c_j)^2) <= bound, depth first.

    A branch is cut once the squares already used plus the least possible
    contribution of the remaining coordinates (spread evenly) pass the bound.
    """
    if count == 0:
        if target == 0:
            yield ()
        return
    cs = [float(c) for c in centers]
    if len(cs) != count:
        raise CircularSumError(f"expected {count} centers, got {len(cs)}")
    w = float(weight)
    slack = 1e-9 * max(1.0, abs(float(bound)))
    limit = float(bound) + slack
    suffix = [0.0] * (count + 1)
    for j in range(count - 1, -1, -1):
        suffix[j] = suffix[j + 1] + cs[j]
    point: List[int] = []

    def walk(j: int, remaining: int, used: float):
        if j == count - 1:
            if used + w * (remaining + cs[j]) ** 2 <= limit:
                yield tuple(point) + (remaining,)
            return
        radius = math.sqrt(max(0.0, (limit - used) / w))
        rest = count - j - 1
        for s in range(math.ceil(-cs[j] - radius), math.floor(-cs[j] + radius) + 1):
            spent = used + w * (s + cs[j]) ** 2
            if spent + w * (remaining - s + suffix[j + 1]) ** 2 / rest > limit:
                continue
            point.append(s)
            yield from walk(j + 1, remaining - s, spent)
            point.pop()

    yield from walk(0, target, 0.0)


def h_coeff(spec: LatticeSumSpec) -> QxSeries:
    """H_{m,n}(y | tau) from its lattice sum, exact below spec.order."""
    m, n, mn = spec.m, spec.n, spec.mn
    order = spec.order
    lead = -Fraction(m * m * n, 8)
    centers = [y.shift.b for y in spec.ys]
    bound = order - lead + sum(b * b for b in centers) / 2
    roots = 1
    for y in spec.ys:
        roots = math.lcm(roots, y.shift.a.denominator)
    counts: Dict[Tuple, Dict[int, int]] = {}
    for s in lattice_points(n, mn // 2, centers, Fraction(1, 2), bound):
        qexp = lead + Fraction(sum(v * v for v in s), 2) + sum(v * b for v, b in zip(s, centers))
        if qexp >= order:
            continue
        xvec = tuple(2 * sum(v * y.linear[i] for v, y in zip(s, spec.ys)) for i in range(spec.dim))
        k = sum(v * y.shift.a * roots for v, y in zip(s, spec.ys))
        bucket = counts.setdefault((qexp, xvec), {})
        bucket[int(k) % roots] = bucket.get(int(k) % roots, 0) + 1
    terms = {}
    for key, bucket in counts.items():
        coeff = root_counts_to_cyclo(roots, bucket, mn)
        if not coeff.is_zero():
            terms[key] = coeff
    return QxSeries._make(spec.dim, terms, order)


def _unit(dim: int, v: int = 0, scale: int = 1) -> Tuple[int, ...]:
    return tuple(scale if i == v else 0 for i in range(dim))


def _theta_builder(kind: int, linear: Sequence[int], shift: ShiftSpec = ShiftSpec(), tau_scale=1):
    arg = ArgSpec(tuple(linear), shift, tau_scale)
    return lambda o: theta(kind, arg, arg.dim, o)


def _add_linear(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i + j for i, j in zip(a, b))


def alternating_sum(count: int, term: Callable[[int, Fraction], QxSeries], dim: int, order) -> QxSeries:
    """sum_{k < count} (-1)^k term(k)."""
    parts = []
    for k in range(count):
        part = term(k, order)
        parts.append(-part if k % 2 else part)
    return sum_series(parts, dim)


def build_lhs(spec: LatticeSumSpec) -> QxSeries:
    mn, dim = spec.mn, spec.dim

    def term(k, order):
        builders = [
            _theta_builder(3, _add_linear(_unit(dim), y.linear), y.shift + ShiftSpec(Fraction(k, mn)))
            for y in spec.ys
        ]
        return product_to_order(builders, order)

    return alternating_sum(mn, term, dim, spec.order)


def build_rhs(spec: LatticeSumSpec) -> QxSeries:
    return product_to_order(
        [
            lambda o: h_coeff(replace(spec, order=o)),
            _theta_builder(2, _unit(spec.dim, 0, spec.mn), tau_scale=spec.m * spec.m * spec.n),
        ],
        spec.order,
    )


def describe_spec(spec: LatticeSumSpec) -> str:
    ys = "; ".join(f"{list(y.linear)}+{y.shift.a}pi+{y.shift.b}pi*tau" for y in spec.ys)
    return f"m={spec.m}, n={spec.n}, ys=[{ys}]"


def verify_fund(spec: LatticeSumSpec, name: str = "fund") -> CheckReport:
    started = time.perf_counter()
    params = describe_spec(spec)
    try:
        return compare_sides(name, params, build_lhs(spec), build_rhs(spec), spec.order, started, stretch=True)
    except Exception as exc:
        return error_report(name, params, spec.order, exc, started)


def h_m2_closed(m: int, order) -> QxSeries:
    """
    Closed form of H_{m,2}(y, -y) in the variables (z, y): 2m theta2(2y | 2 tau)
    for odd m and 2m theta3(2y | 2 tau) for even m.
    """
    if m < 1:
        raise CircularSumError(f"m must be positive, got {m}")
    kind = 2 if m % 2 else 3
    return theta(kind, ArgSpec((0, 2), ShiftSpec(), 2), 2, as_rat(order)).scale(2 * m)


def preset_ys(preset: str, n: int, dim: int = 1) -> Tuple[YSpec, ...]:
    """
    Named shift families: zero, pi4 = (pi/4, -pi/4, 0, ...),
    pitau2 = (pi tau/2, -pi tau/2, 0, ...), formal = (y, -y, 0, ...) over (z, y).
    """
    zero = YSpec((0,) * dim)
    if preset == "zero":
        return (zero,) * n
    if n < 2:
        raise CircularSumError(f"preset {preset!r} needs n >= 2")
    if preset == "pi4":
        pair = (YSpec((0,) * dim, ShiftSpec(Fraction(1, 4))), YSpec((0,) * dim, ShiftSpec(Fraction(-1, 4))))
    elif preset == "pitau2":
        pair = (YSpec((0,) * dim, ShiftSpec(0, Fraction(1, 2))), YSpec((0,) * dim, ShiftSpec(0, Fraction(-1, 2))))
    elif preset == "formal":
        if dim < 2:
            raise CircularSumError("the formal preset needs a second variable")
        pair = (YSpec(_unit(dim, 1)), YSpec(_unit(dim, 1, -1)))
    else:
        raise CircularSumError(f"unknown shift preset {preset!r}")
    return pair + (zero,) * (n - 2)


# catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    dim: int
    defaults: Dict
    default_order: Fraction
    build: Callable[[Dict, Fraction], Tuple[QxSeries, QxSeries]]
    expect: str = "pass"


def _fund_sides(params, order):
    dim = 2 if params["ys"] == "formal" else 1
    spec = LatticeSumSpec(params["m"], params["n"], preset_ys(params["ys"], params["n"], dim), order)
    return build_lhs(spec), build_rhs(spec)


def _boona_sides(params, order):
    m = params["m"]
    lhs = alternating_sum(2 * m, lambda k, o: theta(3, ArgSpec((1,), ShiftSpec(Fraction(k, 2 * m))), 1, o), 1, order)
    rhs = theta(2, ArgSpec((2 * m,), ShiftSpec(), 4 * m * m), 1, order).scale(2 * m)
    return lhs, rhs


def gc_constant(n: int, order) -> QxSeries:
    """
    H_{1,2n}(tau) read off as 2n q^(-n/4) times the coefficient of e^(2niz)
    in theta3(z | tau)^(2n), independently of the lattice enumerator.
    """
    order = as_rat(order)
    lift = order + Fraction(n, 4)
    power = product_to_order([_theta_builder(3, (1,))] * (2 * n), lift)
    return power.x_coefficient(0, 2 * n).scale(2 * n, Fraction(-n, 4))


def _gc_sides(params, order):
    n = params["n"]
    lhs = alternating_sum(
        2 * n,
        lambda k, o: product_to_order([_theta_builder(3, (1,), ShiftSpec(Fraction(k, 2 * n)))] * (2 * n), o),
        1,
        order,
    )
    rhs = product_to_order([lambda o: gc_constant(n, o).pad(1), _theta_builder(2, (2 * n,), tau_scale=2 * n)], order)
    return lhs, rhs


def _theta1_sum_sides(params, order):
    n = params["n"]
    parts = [
        product_to_order([_theta_builder(1, (1,), ShiftSpec(Fraction(k, 2 * n)))] * (2 * n), order)
        for k in range(2 * n)
    ]
    lhs = sum_series(parts, 1)
    rhs = product_to_order([lambda o: gc_constant(n, o).pad(1), _theta_builder(3, (2 * n,), tau_scale=2 * n)], order)
    return lhs, rhs


def _2m1_sides(params, order):
    m = params["m"]

    def term(k, o):
        shift = ShiftSpec(Fraction(k, 2 * m))
        return product_to_order([_theta_builder(3, (1, 1), shift), _theta_builder(3, (1, -1), shift)], o)

    lhs = alternating_sum(2 * m, term, 2, order)
    rhs = product_to_order(
        [lambda o: h_m2_closed(m, o), _theta_builder(2, (2 * m, 0), tau_scale=2 * m * m)],
        order,
    )
    return lhs, rhs


def _pair(kind: int, shift: ShiftSpec = ShiftSpec()):
    return lambda o: product_to_order([_theta_builder(kind, (1, 1), shift), _theta_builder(kind, (1, -1), shift)], o)


def _prop_m1_sides(params, order):
    lhs = _pair(3)(order) - _pair(4)(order)
    rhs = product_to_order([_theta_builder(2, (0, 2), tau_scale=2), _theta_builder(2, (2, 0), tau_scale=2)], order)
    return lhs, rhs.scale(2)


def _prop_4z_sides(params, order):
    quarter = ShiftSpec(Fraction(1, 4))
    lhs = _pair(3)(order) - _pair(3, quarter)(order) + _pair(4)(order) - _pair(4, quarter)(order)
    rhs = product_to_order([_theta_builder(3, (0, 2), tau_scale=2), _theta_builder(2, (4, 0), tau_scale=8)], order)
    return lhs, rhs.scale(4)


def _qmul(*builders):
    return lambda o: product_to_order(list(builders), o)


def _phi(sign=1, power=1):
    return lambda o: phi(sign, o, power)


def _psi(sign=1, power=1):
    return lambda o: psi(sign, o, power)


def _times_q(builder, r=1):
    return lambda o: builder(o - r).scale(1, r)


def _mod_a(params, order):
    return _qmul(_phi(), _psi(1, 2))(order), _qmul(_psi(), _psi())(order)


def _mod_b(params, order):
    return phi(1, order) - phi(-1, order), _times_q(_psi(1, 8))(order).scale(4)


def _mod_c(params, order):
    return phi(1, order) + phi(-1, order), phi(1, order, 4).scale(2)


def _mod_d(params, order):
    lhs = _qmul(_phi(), _phi())(order) - _qmul(_phi(-1), _phi(-1))(order)
    if params["via"] == "bc":
        rhs = _times_q(_qmul(_psi(1, 8), _phi(1, 4)))(order).scale(8)
    elif params["form"] == "printed":
        rhs = _times_q(_qmul(_psi(1, 2), _psi(1, 2)))(order).scale(8)
    else:
        rhs = _times_q(_qmul(_psi(1, 4), _psi(1, 4)))(order).scale(8)
    return lhs, rhs


def _mod_e(params, order):
    lhs = _qmul(_psi(), _psi())(order) - _qmul(_phi(-1), _psi(1, 2))(order)
    rhs = _times_q(_qmul(_psi(1, 2), _psi(1, 8)))(order).scale(4)
    return lhs, rhs


def _mod_f(params, order):
    lhs = _qmul(_psi(), _psi())(order) + _qmul(_phi(-1), _psi(1, 2))(order)
    rhs = _qmul(_psi(1, 2), _phi(1, 4))(order).scale(2)
    return lhs, rhs


def quarter_shifts(n: int, tau: bool = False) -> Tuple[YSpec, ...]:
    """The 2n shifts +-(2j-1) pi/4n (or +-(2j-1) pi tau/4n), j = 1..n."""
    ys = []
    for j in range(1, n + 1):
        step = Fraction(2 * j - 1, 4 * n)
        shift = ShiftSpec(0, step) if tau else ShiftSpec(step)
        ys += [YSpec((0,), shift), YSpec((0,), -shift)]
    return tuple(ys)


def _q1_product_sides(params, order):
    """prod_j theta3(z +- (2j-1) pi/4n) (q^2n; q^2n) = (q; q)^2n theta3(2nz | 2n tau)."""
    n = params["n"]
    builders = [_theta_builder(3, (1,), y.shift) for y in quarter_shifts(n)]
    builders.append(lambda o: pochhammer(Monomial(1, 2 * n, (0,)), 2 * n, o))
    lhs = product_to_order(builders, order)
    euler = [lambda o: pochhammer(Monomial(1, 1, (0,)), 1, o)] * (2 * n)
    rhs = product_to_order(euler + [_theta_builder(3, (2 * n,), tau_scale=2 * n)], order)
    return lhs, rhs


def _h_2m2n_sides(params, order):
    """H_{2m,2n}(+-(2j-1) pi/4n) (q^2n; q^2n) = 4mn (q; q)^2n."""
    m, n = params["m"], params["n"]
    ys = quarter_shifts(n)
    lhs = product_to_order(
        [
            lambda o: h_coeff(LatticeSumSpec(2 * m, 2 * n, ys, o)),
            lambda o: pochhammer(Monomial(1, 2 * n, (0,)), 2 * n, o),
        ],
        order,
    )
    rhs = product_to_order([lambda o: pochhammer(Monomial(1, 1, (0,)), 1, o)] * (2 * n), order)
    return lhs, rhs.scale(4 * m * n)


def _q2_product_sides(params, order):
    """prod_j theta3(z +- (2j-1) pi tau/4n) (q^(1/2n); q^(1/2n)) = (q; q)^2n theta3(z | tau/2n)."""
    n = params["n"]
    builders = [_theta_builder(3, (1,), y.shift) for y in quarter_shifts(n, tau=True)]
    step = Fraction(1, 2 * n)
    builders.append(lambda o: pochhammer(Monomial(1, step, (0,)), step, o))
    lhs = product_to_order(builders, order)
    euler = [lambda o: pochhammer(Monomial(1, 1, (0,)), 1, o)] * (2 * n)
    rhs = product_to_order(euler + [_theta_builder(3, (1,), tau_scale=step)], order)
    return lhs, rhs


def _period_function(m: int, n: int, ys: Sequence[YSpec], extra: ShiftSpec):
    """
    g(w) = sum_k (-1)^k prod_j theta3(w + y_j + k pi/mn | tau/(m^2 n)) with z = mn w,
    optionally evaluated at w + extra.
    """
    mn = m * n
    scale = Fraction(1, m * m * n)
    dim = len(ys[0].linear)

    def term(k, o):
        return product_to_order(
            [
                _theta_builder(3, _add_linear(_unit(dim), y.linear), y.shift + extra + ShiftSpec(Fraction(k, mn)), scale)
                for y in ys
            ],
            o,
        )

    return lambda o: alternating_sum(mn, term, dim, o)


def _period_pi_sides(params, order):
    m, n = params["m"], params["n"]
    ys = preset_ys(params["ys"], n)
    LatticeSumSpec(m, n, ys, order)  # raises for non-circular parameters
    mn = m * n
    lhs = _period_function(m, n, ys, ShiftSpec(Fraction(1, mn)))(order)
    rhs = -_period_function(m, n, ys, ShiftSpec())(order)
    return lhs, rhs


def _period_pitau_sides(params, order):
    m, n = params["m"], params["n"]
    ys = preset_ys(params["ys"], n)
    LatticeSumSpec(m, n, ys, order)  # raises for non-circular parameters
    mn = m * n
    lhs = _period_function(m, n, ys, ShiftSpec(0, Fraction(1, mn)))(order)
    base = _period_function(m, n, ys, ShiftSpec())(order + Fraction(1, 2))
    rhs = base.scale(1, Fraction(-1, 2), (-2 * mn,))
    return lhs, rhs


_F = Fraction

CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in [
        CatalogEntry("fund", "alternating circular sum of theta3 products = H_{m,n} theta2(mnz | m^2 n tau)", 1,
                     {"m": 2, "n": 2, "ys": "pi4"}, _F(20), _fund_sides),
        CatalogEntry("boona", "sum_{k<2m} (-1)^k theta3(z + k pi/2m) = 2m theta2(2mz | 4m^2 tau)", 1,
                     {"m": 2}, _F(20), _boona_sides),
        CatalogEntry("gc", "sum_{k<2n} (-1)^k theta3^2n(z + k pi/2n) = H_{1,2n}(tau) theta2(2nz | 2n tau)", 1,
                     {"n": 2}, _F(20), _gc_sides),
        CatalogEntry("theta1-sum", "sum_{k<2n} theta1^2n(z + k pi/2n) = H_{1,2n}(tau) theta3(2nz | 2n tau)", 1,
                     {"n": 2}, _F(20), _theta1_sum_sides),
        CatalogEntry("2m1", "sum_{k<2m} (-1)^k theta3(z+y+k pi/2m) theta3(z-y+k pi/2m) = 2m theta2|3(2y|2tau) theta2(2mz|2m^2 tau)",
                     2, {"m": 2}, _F(20), _2m1_sides),
        CatalogEntry("prop-m1", "theta3(z+y)theta3(z-y) - theta4(z+y)theta4(z-y) = 2 theta2(2y|2tau) theta2(2z|2tau)", 2,
                     {}, _F(30), _prop_m1_sides),
        CatalogEntry("prop-4z", "four-term theta3/theta4 sum = 4 theta3(2y|2tau) theta2(4z|8tau)", 2,
                     {}, _F(30), _prop_4z_sides),
        CatalogEntry("mod-a", "phi(q) psi(q^2) = psi(q)^2", 0, {}, _F(100), _mod_a),
        CatalogEntry("mod-b", "phi(q) - phi(-q) = 4q psi(q^8)", 0, {}, _F(100), _mod_b),
        CatalogEntry("mod-c", "phi(q) + phi(-q) = 2 phi(q^4)", 0, {}, _F(100), _mod_c),
        CatalogEntry("mod-d", "phi(q)^2 - phi(-q)^2 = 8q psi(q^4)^2", 0,
                     {"form": "corrected", "via": "direct"}, _F(100), _mod_d),
        CatalogEntry("mod-e", "psi(q)^2 - phi(-q) psi(q^2) = 4q psi(q^2) psi(q^8)", 0, {}, _F(100), _mod_e),
        CatalogEntry("mod-f", "psi(q)^2 + phi(-q) psi(q^2) = 2 psi(q^2) phi(q^4)", 0, {}, _F(100), _mod_f),
        CatalogEntry("q1-prod", "prod theta3(z +- (2j-1)pi/4n) (q^2n;q^2n) = (q;q)^2n theta3(2nz|2n tau)", 1,
                     {"n": 2}, _F(20), _q1_product_sides),
        CatalogEntry("h-2m2n", "H_{2m,2n}(+-(2j-1)pi/4n | tau) (q^2n;q^2n) = 4mn (q;q)^2n", 1,
                     {"m": 1, "n": 2}, _F(20), _h_2m2n_sides),
        CatalogEntry("q2-prod", "prod theta3(z +- (2j-1)pi tau/4n) (q^(1/2n);q^(1/2n)) = (q;q)^2n theta3(z|tau/2n)", 1,
                     {"n": 2}, _F(20), _q2_product_sides),
        CatalogEntry("fund-period-pi", "g(z + pi) = -g(z) for the circular sum in w = z/mn", 1,
                     {"m": 2, "n": 2, "ys": "pi4"}, _F(10), _period_pi_sides),
        CatalogEntry("fund-period-pitau", "g(z + pi tau) = q^(-1/2) e^(-2iz) g(z) for the circular sum in w = z/mn", 1,
                     {"m": 2, "n": 2, "ys": "pi4"}, _F(10), _period_pitau_sides),
    ]
}

_STRING_PARAMS = {"ys": ("zero", "pi4", "pitau2", "formal"), "form": ("corrected", "printed"), "via": ("direct", "bc")}


def resolve_params(name: str, params: Optional[Dict] = None) -> Dict:
    """Merge user params over the entry defaults and validate them."""
    if name not in CATALOG:
        raise CircularSumError(f"unknown catalog identity {name!r}")
    entry = CATALOG[name]
    merged = dict(entry.defaults)
    for key, value in (params or {}).items():
        if key not in entry.defaults:
            raise CircularSumError(f"{name} takes no parameter {key!r}")
        merged[key] = value
    for key, value in merged.items():
        if key in _STRING_PARAMS:
            if value not in _STRING_PARAMS[key]:
                raise CircularSumError(f"{name}: {key} must be one of {', '.join(_STRING_PARAMS[key])}")
            continue
        try:
            merged[key] = int(value)
        except (TypeError, ValueError):
            raise CircularSumError(f"{name}: {key} must be an integer, got {value!r}")
        if merged[key] < 1:
            raise CircularSumError(f"{name}: {key} must be positive, got {merged[key]}")
    return merged


def format_params(params: Dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(params.items()))


def catalog_sides(name: str, params: Optional[Dict] = None, order=None) -> Tuple[QxSeries, QxSeries]:
    resolved = resolve_params(name, params)
    entry = CATALOG[name]
    order = as_rat(order) if order is not None else entry.default_order
    return entry.build(resolved, order)


def verify_named(name: str, params: Optional[Dict] = None, order=None) -> CheckReport:
    """
    Build both sides of a catalog identity and compare them exactly.
    Unknown names and bad params raise CircularSumError; failures while
    building are reported with verdict error.
    """
    resolved = resolve_params(name, params)
    entry = CATALOG[name]
    order = as_rat(order) if order is not None else entry.default_order
    label = format_params(resolved)
    started = time.perf_counter()
    try:
        lhs, rhs = entry.build(resolved, order)
        return compare_sides(name, label, lhs, rhs, order, started)
    except Exception as exc:
        return error_report(name, label, order, exc, started)


def float_residual(name: str, params: Optional[Dict], order, tau: complex, zvals: Sequence[complex] = ()) -> complex:
    """
    Float LHS minus float RHS of a catalog identity, each side summed on its
    own below the order both are exact for; zvals are padded with zeros.
    """
    lhs, rhs = catalog_sides(name, params, order)
    common = min(lhs.order, rhs.order)
    values = list(zvals)[: lhs.dim] + [0j] * max(0, lhs.dim - len(zvals))
    left, _ = eval_complex(lhs.truncate(common), values, tau)
    right, _ = eval_complex(rhs.truncate(common), values, tau)
    return left - right

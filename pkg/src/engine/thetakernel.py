"""
Jacobi theta functions, q-Pochhammer products and Ramanujan's f(a, b) as
truncated QxSeries.

Conventions: q = e^(2 pi i tau), x_v = e^(i z_v). For an argument
w = L.z + a*pi + b*pi*tau at nome scale c,

    theta3(w | c tau) = sum_n q^(c n^2 / 2) e^(2 n i w)
    theta4(w | c tau) = sum_n (-1)^n q^(c n^2 / 2) e^(2 n i w)
    theta2(w | c tau) = sum_n q^(c (n + 1/2)^2 / 2) e^((2n + 1) i w)
    theta1(w | c tau) = -i sum_n (-1)^n q^(c (n + 1/2)^2 / 2) e^((2n + 1) i w)
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Sequence, Tuple

from engine.exactnum import ONE, CycloNum, as_rat, cyclo_root, exp_i_pi
from engine.qxseries import (
    INF,
    ArgSpec,
    QxSeries,
    ShiftSpec,
    product_to_order,
)

THETA_KINDS = (1, 2, 3, 4)


class ThetaError(ValueError):
    """Raised for an unknown theta kind or a non-convergent product or sum"""


@dataclass(frozen=True)
class Monomial:
    """
    sign * e^(i pi angle) * q^qexp * x^xvec. A sign of 0 is the zero monomial.
    """

    sign: int = 1
    qexp: Fraction = Fraction(0)
    xvec: Tuple[int, ...] = ()
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ThetaError(f"monomial sign must be -1, 0 or 1, got {self.sign}")
        object.__setattr__(self, "qexp", as_rat(self.qexp))
        object.__setattr__(self, "angle", as_rat(self.angle) % 2)
        object.__setattr__(self, "xvec", tuple(int(m) for m in self.xvec))

    @property
    def dim(self) -> int:
        return len(self.xvec)

    def coefficient(self) -> CycloNum:
        if not self.sign:
            return CycloNum.rational(0)
        return exp_i_pi(self.angle) * self.sign

    def times(self, other: "Monomial") -> "Monomial":
        if self.dim != other.dim:
            raise ThetaError("monomials of different dimension")
        return Monomial(
            self.sign * other.sign,
            self.qexp + other.qexp,
            tuple(i + j for i, j in zip(self.xvec, other.xvec)),
            self.angle + other.angle,
        )

    def negated(self) -> "Monomial":
        return Monomial(-self.sign, self.qexp, self.xvec, self.angle)

    def as_series(self) -> QxSeries:
        return QxSeries.monomial(self.dim, self.coefficient(), self.qexp, self.xvec)


def q_power(r, dim: int = 0, sign: int = 1) -> Monomial:
    return Monomial(sign, as_rat(r), (0,) * dim)


def _check_kind(kind) -> int:
    try:
        kind = int(kind)
    except (TypeError, ValueError):
        raise ThetaError(f"unknown theta kind {kind!r}")
    if kind not in THETA_KINDS:
        raise ThetaError(f"unknown theta kind {kind}")
    return kind


def _check_order(order) -> Fraction:
    if order == INF:
        raise ThetaError("a truncation order must be finite")
    return as_rat(order)


def _kind_sign(kind: int, k: int) -> CycloNum:
    if kind == 3 or kind == 2:
        return ONE
    if kind == 4:
        return cyclo_root(2, k // 2)
    # -i * (-1)^((k-1)/2)
    return cyclo_root(4, 3 + 2 * ((k - 1) // 2))


def _quadratic_window(a: Fraction, b: Fraction, bound: Fraction) -> Tuple[int, int]:
    """Integer window holding every k with a k^2 + b k < bound (a > 0)."""
    disc = float(b) ** 2 + 4 * float(a) * float(bound)
    if disc < 0:
        return 0, -1
    root = math.sqrt(disc)
    lo = (-float(b) - root) / (2 * float(a))
    hi = (-float(b) + root) / (2 * float(a))
    return math.floor(lo) - 1, math.ceil(hi) + 1


@lru_cache(maxsize=1024)
def theta(kind, arg: ArgSpec, dim: int, order) -> QxSeries:
    """
    Series of theta_kind(arg | tau_scale * tau), exact below order.

    Shifts in the argument are folded into the generator, so shifted
    thetas come out with the requested order rather than a reduced one.
    """
    kind = _check_kind(kind)
    order = _check_order(order)
    if arg.dim != dim:
        raise ThetaError(f"argument has dimension {arg.dim}, series has {dim}")
    c, b = arg.tau_scale, arg.shift.b
    parity = 1 if kind in (1, 2) else 0
    lo, hi = _quadratic_window(c / 8, b / 2, order)
    acc: Dict = {}
    for k in range(lo, hi + 1):
        if k % 2 != parity:
            continue
        qexp = c * k * k / 8 + b * k / 2
        if qexp >= order:
            continue
        xvec, phase, _ = arg.times(k)
        key = (qexp, xvec)
        value = phase * _kind_sign(kind, k)
        acc[key] = acc[key] + value if key in acc else value
    return QxSeries._make(dim, {key: v for key, v in acc.items() if not v.is_zero()}, order)


def _times_binomial(terms: Dict, coeff: CycloNum, qexp: Fraction, xvec: Tuple[int, ...], limit) -> Dict:
    """terms * (1 - coeff q^qexp x^xvec), dropping exponents at or past limit."""
    result = dict(terms)
    for (e, x), c in terms.items():
        e2 = e + qexp
        if e2 >= limit:
            continue
        key = (e2, tuple(i + j for i, j in zip(x, xvec)))
        value = -(c * coeff)
        total = result[key] + value if key in result else value
        if total.is_zero():
            result.pop(key, None)
        else:
            result[key] = total
    return result


def pochhammer(z: Monomial, base, order) -> QxSeries:
    """
    (z; q^base)_infinity = prod_{n >= 0} (1 - z q^(n base)), exact below order.
    """
    dim = z.dim
    if not z.sign:
        return QxSeries.constant(dim, 1)
    base = as_rat(base)
    order = _check_order(order)
    if base <= 0:
        raise ThetaError(f"pochhammer base exponent must be positive, got {base}")
    coeff = z.coefficient()
    unit = {(Fraction(0), (0,) * dim): ONE}

    # Factors with a negative q-exponent form an exact finite product.
    negative = dict(unit)
    n = 0
    while z.qexp + n * base < 0:
        negative = _times_binomial(negative, coeff, z.qexp + n * base, z.xvec, INF)
        n += 1
    head = QxSeries._make(dim, negative, INF)
    low = min(head.min_qexp(), Fraction(0))
    limit = order - low

    positive = dict(unit)
    while z.qexp + n * base < limit:
        positive = _times_binomial(positive, coeff, z.qexp + n * base, z.xvec, limit)
        n += 1
    tail = QxSeries._make(dim, positive, limit)
    return (head * tail).truncate(order)


def f_ab(a: Monomial, b: Monomial, order) -> QxSeries:
    """
    Ramanujan's theta function f(a, b) = sum_n a^(n(n+1)/2) b^(n(n-1)/2).
    """
    order = _check_order(order)
    if a.dim != b.dim:
        raise ThetaError("f(a, b) arguments have different dimensions")
    if not a.sign or not b.sign:
        raise ThetaError("f(a, b) needs non-zero arguments")
    if a.qexp + b.qexp <= 0:
        raise ThetaError(f"f(a, b) diverges: |ab| needs a positive q-exponent, got {a.qexp + b.qexp}")
    lo, hi = _quadratic_window((a.qexp + b.qexp) / 2, (a.qexp - b.qexp) / 2, order)
    acc: Dict = {}
    for n in range(lo, hi + 1):
        t1, t2 = n * (n + 1) // 2, n * (n - 1) // 2
        qexp = a.qexp * t1 + b.qexp * t2
        if qexp >= order:
            continue
        sign = (a.sign ** (t1 % 2)) * (b.sign ** (t2 % 2))
        value = exp_i_pi(a.angle * t1 + b.angle * t2) * sign
        key = (qexp, tuple(t1 * i + t2 * j for i, j in zip(a.xvec, b.xvec)))
        acc[key] = acc[key] + value if key in acc else value
    return QxSeries._make(a.dim, {k: v for k, v in acc.items() if not v.is_zero()}, order)


def f_ab_product(a: Monomial, b: Monomial, order) -> QxSeries:
    """Jacobi triple product form (-a; ab)(-b; ab)(ab; ab) of f(a, b)."""
    ab = a.times(b)
    if ab.qexp <= 0:
        raise ThetaError("f(a, b) diverges")
    if ab.sign != 1 or ab.angle or any(ab.xvec):
        raise ThetaError("the product form needs ab to be a pure power of q")
    return product_to_order(
        [
            lambda o: pochhammer(a.negated(), ab.qexp, o),
            lambda o: pochhammer(b.negated(), ab.qexp, o),
            lambda o: pochhammer(ab, ab.qexp, o),
        ],
        order,
    )


def _sq(sign: int, power) -> Monomial:
    if sign not in (-1, 1):
        raise ThetaError(f"sign must be +1 or -1, got {sign}")
    return Monomial(sign, as_rat(power), ())


def phi(sign: int, order, power=1) -> QxSeries:
    """phi(sign * q^power) = f(sq, sq)."""
    s = _sq(sign, power)
    return f_ab(s, s, order)


def psi(sign: int, order, power=1) -> QxSeries:
    """psi(sign * q^power) = f(sq, (sq)^3)."""
    s = _sq(sign, power)
    return f_ab(s, Monomial(sign, 3 * s.qexp, ()), order)


def theta_product(kind, arg: ArgSpec, dim: int, order) -> QxSeries:
    """
    theta_kind(arg | c tau) through its Jacobi triple product:

        theta1 = i q^(c/8) e^(-iw) (q^c, e^(2iw), q^c e^(-2iw); q^c)
        theta2 = q^(c/8) e^(-iw) (q^c, -e^(2iw), -q^c e^(-2iw); q^c)
        theta3 = (q^c, -q^(c/2) e^(2iw), -q^(c/2) e^(-2iw); q^c)
        theta4 = (q^c, q^(c/2) e^(2iw), q^(c/2) e^(-2iw); q^c)
    """
    kind = _check_kind(kind)
    order = _check_order(order)
    if arg.dim != dim:
        raise ThetaError(f"argument has dimension {arg.dim}, series has {dim}")
    c, a, b = arg.tau_scale, arg.shift.a, arg.shift.b
    up = Monomial(1, b, tuple(2 * m for m in arg.linear), 2 * a)
    down = Monomial(1, -b, tuple(-2 * m for m in arg.linear), -2 * a)
    nome = q_power(c, dim)
    if kind in (1, 2):
        sign = 1 if kind == 1 else -1
        first, second = Monomial(sign, 0, (0,) * dim).times(up), Monomial(sign, c, (0,) * dim).times(down)
        lead = Monomial(1, c / 8 - b / 2, tuple(-m for m in arg.linear), -a + (Fraction(1, 2) if kind == 1 else 0))
    else:
        sign = -1 if kind == 3 else 1
        first, second = Monomial(sign, c / 2, (0,) * dim).times(up), Monomial(sign, c / 2, (0,) * dim).times(down)
        lead = Monomial(1, 0, (0,) * dim)
    return product_to_order(
        [
            lambda o: lead.as_series(),
            lambda o: pochhammer(nome, c, o),
            lambda o: pochhammer(first, c, o),
            lambda o: pochhammer(second, c, o),
        ],
        order,
    )


def eval_complex(series: QxSeries, zvals: Sequence[complex], tau: complex) -> Tuple[complex, float]:
    """
    Float value of a series at z = zvals and nome parameter tau, with a crude
    bound on the omitted tail.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ThetaError(f"tau must lie in the upper half plane, got {tau}")
    zvals = list(zvals)
    if len(zvals) != series.dim:
        raise ThetaError(f"expected {series.dim} variable values, got {len(zvals)}")
    total = 0j
    largest = 0.0
    for (qexp, xvec), coeff in series.terms.items():
        value = coeff.to_complex()
        largest = max(largest, abs(value))
        phase = sum(m * complex(z) for m, z in zip(xvec, zvals))
        total += value * cmath.exp(2j * math.pi * tau * float(qexp) + 1j * phase)
    tail = 0.0
    if series.order != INF:
        nome = math.exp(-2 * math.pi * tau.imag)
        tail = max(largest, 1.0) * nome ** float(series.order) / (1 - nome)
    return total, tail


class ShiftRelation(NamedTuple):
    """theta_source(z + shift) = i^unit * q^qexp * x^xpow * theta_target(z)."""

    source: int
    label: str
    shift: ShiftSpec
    unit: int
    qexp: Fraction
    xpow: int
    target: int


def _relations() -> List[ShiftRelation]:
    half, pi_tau, pi_tau_half, pi_only = (
        ShiftSpec(Fraction(1, 2), 0),
        ShiftSpec(0, 1),
        ShiftSpec(0, Fraction(1, 2)),
        ShiftSpec(1, 0),
    )
    rows = [
        (1, "pi", pi_only, 2, 0, 0, 1),
        (2, "pi", pi_only, 2, 0, 0, 2),
        (3, "pi", pi_only, 0, 0, 0, 3),
        (4, "pi", pi_only, 0, 0, 0, 4),
        (1, "pi*tau", pi_tau, 2, Fraction(-1, 2), -2, 1),
        (2, "pi*tau", pi_tau, 0, Fraction(-1, 2), -2, 2),
        (3, "pi*tau", pi_tau, 0, Fraction(-1, 2), -2, 3),
        (4, "pi*tau", pi_tau, 2, Fraction(-1, 2), -2, 4),
        (1, "pi/2", half, 0, 0, 0, 2),
        (2, "pi/2", half, 2, 0, 0, 1),
        (3, "pi/2", half, 0, 0, 0, 4),
        (4, "pi/2", half, 0, 0, 0, 3),
        (1, "pi*tau/2", pi_tau_half, 1, Fraction(-1, 8), -1, 4),
        (2, "pi*tau/2", pi_tau_half, 0, Fraction(-1, 8), -1, 3),
        (3, "pi*tau/2", pi_tau_half, 0, Fraction(-1, 8), -1, 2),
        (4, "pi*tau/2", pi_tau_half, 1, Fraction(-1, 8), -1, 1),
    ]
    return [ShiftRelation(*row) for row in rows]


SHIFT_RELATIONS: List[ShiftRelation] = _relations()


def shift_relation_sides(relation: ShiftRelation, order) -> Tuple[QxSeries, QxSeries]:
    order = _check_order(order)
    lhs = theta(relation.source, ArgSpec((1,), relation.shift), 1, order)
    rhs = theta(relation.target, ArgSpec((1,)), 1, order - relation.qexp).scale(
        cyclo_root(4, relation.unit), relation.qexp, (relation.xpow,)
    )
    return lhs, rhs


def check_shift_relation(relation: ShiftRelation, order) -> bool:
    lhs, rhs = shift_relation_sides(relation, order)
    return (lhs - rhs).is_zero_to_order(order)


class NamedChain(NamedTuple):
    name: str
    lhs: QxSeries
    rhs: QxSeries


def phi_psi_chains(order) -> List[NamedChain]:
    """
    The theta, product and quotient forms of phi(+-q) and psi(+-q).
    Quotients A = B / C are checked as A * C = B.
    """
    order = _check_order(order)
    q = lambda r, sign=1: Monomial(sign, as_rat(r), ())
    at = lambda kind, a, b, c: theta(kind, ArgSpec((), ShiftSpec(a, b), c), 0, order)
    prod = lambda *builders: product_to_order(list(builders), order)
    poch = lambda mono, base: (lambda o: pochhammer(mono, base, o))

    phi_p, phi_m = phi(1, order), phi(-1, order)
    psi_p, psi_m = psi(1, order), psi(-1, order)
    chains = [
        NamedChain("phi-theta3", phi_p, at(3, 0, 0, 2)),
        NamedChain("phi-product", phi_p, prod(poch(q(2), 2), poch(q(1, -1), 2), poch(q(1, -1), 2))),
        NamedChain("phi(-q)-theta4", phi_m, at(4, 0, 0, 2)),
        NamedChain("phi(-q)-product", phi_m, prod(poch(q(2), 2), poch(q(1), 2), poch(q(1), 2))),
        NamedChain("phi(-q)-euler", phi_m, prod(poch(q(1), 1), poch(q(1), 2))),
        NamedChain("phi(-q)-quotient", prod(lambda o: phi(-1, o), poch(q(1, -1), 1)), pochhammer(q(1), 1, order)),
        NamedChain("psi-theta2", psi_p, at(2, 0, 1, 4)),
        NamedChain("psi-theta3", psi_p, at(3, 0, 1, 4)),
        NamedChain(
            "psi-theta2-origin",
            psi_p * 2,
            theta(2, ArgSpec(()), 0, order + Fraction(1, 8)).scale(1, Fraction(-1, 8)),
        ),
        NamedChain("psi-product", psi_p, prod(poch(q(1), 1), poch(q(1, -1), 1), poch(q(1, -1), 1))),
        NamedChain("psi-quotient", prod(lambda o: psi(1, o), poch(q(1), 2)), pochhammer(q(2), 2, order)),
        NamedChain("psi(-q)-theta1", psi_m, at(1, 0, 1, 4).scale(cyclo_root(4, 3))),
        NamedChain("psi(-q)-theta4", psi_m, at(4, 0, 1, 4)),
        NamedChain("psi(-q)-product", psi_m, prod(poch(q(1), 1), poch(q(2, -1), 2))),
        NamedChain("psi(-q)-quotient", prod(lambda o: psi(-1, o), poch(q(1, -1), 2)), pochhammer(q(2), 2, order)),
    ]
    return chains

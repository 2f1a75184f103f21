"""
Truncated multivariate series in a fractional power of q and integer powers
of x_v = e^(i z_v), with CycloNum coefficients.

A series is exact for every q-exponent strictly below its order; nothing is
claimed at or above it. An exact polynomial (or an exact zero) carries
order = math.inf.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from engine.exactnum import (
    CycloNum,
    as_cyclo,
    as_rat,
    exp_i_pi,
)

INF = math.inf

Key = Tuple[Fraction, Tuple[int, ...]]


class SeriesError(ValueError):
    """Raised for dimension mismatches and reads beyond the exactness order"""


@dataclass(frozen=True)
class ShiftSpec:
    """Additive shift a*pi + b*pi*tau applied to a variable."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "b", as_rat(self.b))

    def phase(self, m: int) -> CycloNum:
        """Phase picked up by x^m, namely e^(i pi a m)."""
        return exp_i_pi(self.a * m)

    def q_gain(self, m: int) -> Fraction:
        """q-exponent picked up by x^m, namely b*m/2."""
        return self.b * m / 2

    def __add__(self, other: "ShiftSpec") -> "ShiftSpec":
        return ShiftSpec(self.a + other.a, self.b + other.b)

    def __neg__(self) -> "ShiftSpec":
        return ShiftSpec(-self.a, -self.b)

    def scaled(self, factor) -> "ShiftSpec":
        return ShiftSpec(self.a * factor, self.b * factor)

    def is_zero(self) -> bool:
        return not self.a and not self.b


@dataclass(frozen=True)
class ArgSpec:
    """
    Argument w = sum_v linear[v] z_v + a*pi + b*pi*tau of a theta function
    taken at nome scale tau_scale (the function is evaluated at tau_scale*tau).
    """

    linear: Tuple[int, ...]
    shift: ShiftSpec = field(default_factory=ShiftSpec)
    tau_scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(int(c) for c in self.linear))
        object.__setattr__(self, "tau_scale", as_rat(self.tau_scale))
        if self.tau_scale <= 0:
            raise SeriesError(f"tau scale must be positive, got {self.tau_scale}")

    @property
    def dim(self) -> int:
        return len(self.linear)

    def shifted(self, extra: ShiftSpec) -> "ArgSpec":
        return ArgSpec(self.linear, self.shift + extra, self.tau_scale)

    def times(self, k: int) -> Tuple[Tuple[int, ...], CycloNum, Fraction]:
        """x-vector, phase and q-gain of e^(i k w)."""
        return (
            tuple(k * c for c in self.linear),
            self.shift.phase(k),
            self.shift.q_gain(k),
        )


class QxSeries:
    """Sparse truncated series: {(q-exponent, x-vector): coefficient}."""

    __slots__ = ("dim", "terms", "order")

    def __init__(self, dim: int, terms: Optional[Dict] = None, order=INF):
        if dim < 0:
            raise SeriesError(f"dimension must be non-negative, got {dim}")
        if order != INF:
            order = as_rat(order)
        clean = {}
        for (qexp, xvec), coeff in (terms or {}).items():
            qexp = as_rat(qexp)
            xvec = tuple(int(m) for m in xvec)
            if len(xvec) != dim:
                raise SeriesError(f"x-vector {xvec} does not have dimension {dim}")
            coeff = as_cyclo(coeff)
            if qexp < order and not coeff.is_zero():
                key = (qexp, xvec)
                clean[key] = clean[key] + coeff if key in clean else coeff
        self.dim = dim
        self.order = order
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}

    @classmethod
    def _make(cls, dim: int, terms: Dict, order) -> "QxSeries":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.order = order
        obj.terms = terms
        return obj

    # constructors

    @classmethod
    def zero(cls, dim: int, order=INF) -> "QxSeries":
        return cls._make(dim, {}, order)

    @classmethod
    def constant(cls, dim: int, value) -> "QxSeries":
        return cls.monomial(dim, value, 0, (0,) * dim)

    @classmethod
    def monomial(cls, dim: int, coeff, qexp=0, xvec: Sequence[int] = None) -> "QxSeries":
        xvec = tuple(xvec) if xvec is not None else (0,) * dim
        return cls(dim, {(as_rat(qexp), xvec): coeff}, INF)

    # queries

    def sorted_terms(self) -> List[Tuple[Key, CycloNum]]:
        return sorted(self.terms.items(), key=lambda item: item[0])

    def min_qexp(self):
        """Smallest stored q-exponent, or the order when nothing is stored."""
        if not self.terms:
            return self.order
        return min(qexp for qexp, _ in self.terms)

    def coeff_at(self, qexp, xvec: Sequence[int]) -> CycloNum:
        qexp = as_rat(qexp)
        if qexp >= self.order:
            raise SeriesError(f"q^{qexp} is not below the exactness order {self.order}")
        xvec = tuple(xvec)
        if len(xvec) != self.dim:
            raise SeriesError(f"x-vector {xvec} does not have dimension {self.dim}")
        return self.terms.get((qexp, xvec), CycloNum.rational(0))

    def is_zero_to_order(self, order) -> bool:
        if order != INF:
            order = as_rat(order)
        if order > self.order:
            raise SeriesError(f"cannot certify up to {order}: series is exact only below {self.order}")
        return not any(qexp < order for qexp, _ in self.terms)

    def first_nonzero_below(self, order) -> Optional[Tuple[Fraction, Tuple[int, ...], CycloNum]]:
        below = [(k, v) for k, v in self.terms.items() if k[0] < order]
        if not below:
            return None
        (qexp, xvec), coeff = min(below, key=lambda item: item[0])
        return qexp, xvec, coeff

    def audit(self) -> None:
        """Check the storage invariants; raises SeriesError when broken."""
        for (qexp, xvec), coeff in self.terms.items():
            if qexp >= self.order:
                raise SeriesError(f"stored term q^{qexp} at or above order {self.order}")
            if len(xvec) != self.dim:
                raise SeriesError(f"stored x-vector {xvec} has the wrong dimension")
            if coeff.is_zero():
                raise SeriesError(f"stored zero coefficient at q^{qexp} {xvec}")

    # arithmetic

    def _check_dim(self, other: "QxSeries") -> None:
        if self.dim != other.dim:
            raise SeriesError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, QxSeries):
            other = QxSeries.constant(self.dim, other)
        self._check_dim(other)
        order = min(self.order, other.order)
        terms = {k: v for k, v in self.terms.items() if k[0] < order}
        for key, coeff in other.terms.items():
            if key[0] >= order:
                continue
            if key in terms:
                total = terms[key] + coeff
                if total.is_zero():
                    del terms[key]
                else:
                    terms[key] = total
            else:
                terms[key] = coeff
        return QxSeries._make(self.dim, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return QxSeries._make(self.dim, {k: -v for k, v in self.terms.items()}, self.order)

    def __sub__(self, other):
        if not isinstance(other, QxSeries):
            other = QxSeries.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QxSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise SeriesError(f"series powers must be positive integers, got {k}")
        result = self
        for _ in range(k - 1):
            result = series_mul(result, self)
        return result

    def scale(self, c=1, dq=0, dx: Optional[Sequence[int]] = None) -> "QxSeries":
        """Multiply by c * q^dq * x^dx."""
        c = as_cyclo(c)
        dq = as_rat(dq)
        dx = tuple(dx) if dx is not None else (0,) * self.dim
        if len(dx) != self.dim:
            raise SeriesError(f"x-shift {dx} does not have dimension {self.dim}")
        if c.is_zero():
            return QxSeries.zero(self.dim)
        terms = {}
        for (qexp, xvec), coeff in self.terms.items():
            terms[(qexp + dq, tuple(m + d for m, d in zip(xvec, dx)))] = coeff * c
        return QxSeries._make(self.dim, terms, self.order + dq)

    def shift_var(self, v: int, shift: ShiftSpec) -> "QxSeries":
        """
        Substitute z_v -> z_v + a*pi + b*pi*tau.

        A nonzero b is only accepted on exact series (order = inf).
        """
        self._check_var(v)
        return self._substitute(v, shift, drop=False)

    def eval_var(self, v: int, shift: ShiftSpec) -> "QxSeries":
        """Substitute z_v -> a*pi + b*pi*tau and drop the variable."""
        self._check_var(v)
        return self._substitute(v, shift, drop=True)

    def _check_var(self, v: int) -> None:
        if not 0 <= v < self.dim:
            raise SeriesError(f"variable index {v} out of range for dimension {self.dim}")

    def _substitute(self, v: int, shift: ShiftSpec, drop: bool) -> "QxSeries":
        order = self.order
        if shift.b and order != INF:
            # Unknown terms above the order may carry any x_v power, so no
            # order survives; fold pi*tau shifts into the theta generator.
            raise SeriesError(
                f"cannot shift by {shift.b}*pi*tau a series truncated at q^{order}; "
                "build the shifted function directly")
        dim = self.dim - 1 if drop else self.dim
        acc: Dict[Key, CycloNum] = {}
        for (qexp, xvec), coeff in self.terms.items():
            m = xvec[v]
            new_q = qexp + shift.q_gain(m)
            if new_q >= order:
                continue
            new_x = xvec[:v] + xvec[v + 1:] if drop else xvec
            key = (new_q, new_x)
            value = coeff * shift.phase(m)
            acc[key] = acc[key] + value if key in acc else value
        return QxSeries._make(dim, {k: c for k, c in acc.items() if not c.is_zero()}, order)

    def scale_tau(self, c) -> "QxSeries":
        """Substitute tau -> c*tau, i.e. q -> q^c."""
        c = as_rat(c)
        if c <= 0:
            raise SeriesError(f"tau scale must be positive, got {c}")
        terms = {(qexp * c, xvec): coeff for (qexp, xvec), coeff in self.terms.items()}
        return QxSeries._make(self.dim, terms, self.order * c)

    def x_coefficient(self, v: int, m: int) -> "QxSeries":
        """Coefficient series of x_v^m, as a series in the remaining variables."""
        self._check_var(v)
        terms = {}
        for (qexp, xvec), coeff in self.terms.items():
            if xvec[v] == m:
                terms[(qexp, xvec[:v] + xvec[v + 1:])] = coeff
        return QxSeries._make(self.dim - 1, terms, self.order)

    def pad(self, dim: int) -> "QxSeries":
        """Same series viewed in dim variables; the new ones appear to power 0."""
        if dim < self.dim:
            raise SeriesError(f"cannot pad dimension {self.dim} down to {dim}")
        extra = (0,) * (dim - self.dim)
        return QxSeries._make(dim, {(q, x + extra): c for (q, x), c in self.terms.items()}, self.order)

    def truncate(self, order) -> "QxSeries":
        if order == INF:
            return self
        order = min(self.order, as_rat(order))
        return QxSeries._make(self.dim, {k: c for k, c in self.terms.items() if k[0] < order}, order)

    def __repr__(self):
        return f"QxSeries(dim={self.dim}, order={self.order}, terms={len(self.terms)})"


def series_mul(a: QxSeries, b: QxSeries) -> QxSeries:
    """
    Product of two truncated series.

    The result is exact below min(order_a + mu_b, order_b + mu_a), with mu the
    smallest stored q-exponent of a factor.
    """
    a._check_dim(b)
    mu_a = a.min_qexp()
    mu_b = b.min_qexp()
    if (not a.terms and a.order == INF) or (not b.terms and b.order == INF):
        return QxSeries.zero(a.dim)
    order = min(a.order + mu_b, b.order + mu_a)

    grouped: Dict[Fraction, List[Tuple[Tuple[int, ...], CycloNum]]] = {}
    for (qexp, xvec), coeff in b.terms.items():
        grouped.setdefault(qexp, []).append((xvec, coeff))
    b_exps = sorted(grouped)

    acc: Dict[Key, CycloNum] = {}
    for (qa, xa), ca in a.terms.items():
        for qb in b_exps:
            qexp = qa + qb
            if qexp >= order:
                break
            for xb, cb in grouped[qb]:
                key = (qexp, tuple(i + j for i, j in zip(xa, xb)))
                value = ca * cb
                acc[key] = acc[key] + value if key in acc else value
    return QxSeries._make(a.dim, {k: c for k, c in acc.items() if not c.is_zero()}, order)


def series_add(a: QxSeries, b: QxSeries) -> QxSeries:
    return a + b


def product_to_order(builders: Sequence[Callable[[object], QxSeries]], order) -> QxSeries:
    """
    Multiply the series produced by builders so the product is exact below order.

    Each builder maps a requested order to a series exact at least that far.
    Factors with negative leading exponents force the others to be built
    further out; those are rebuilt once their requirement is known.
    """
    if not builders:
        raise SeriesError("empty product")
    order = as_rat(order)
    factors = [build(order) for build in builders]
    lows = [min(f.min_qexp(), Fraction(0)) for f in factors]
    for j, build in enumerate(builders):
        need = order - (sum(lows) - lows[j])
        if factors[j].order < need:
            factors[j] = build(need)
    result = factors[0]
    for factor in factors[1:]:
        result = series_mul(result, factor)
    if result.order < order:
        raise SeriesError(f"product is only exact below {result.order}, wanted {order}")
    return result.truncate(order)


def sum_series(parts: Iterable[QxSeries], dim: int) -> QxSeries:
    total = QxSeries.zero(dim)
    for part in parts:
        total = total + part
    return total


def format_qexp(qexp) -> str:
    return str(Fraction(qexp)) if qexp != INF else "inf"


def render(series: QxSeries) -> str:
    """One line per stored term: (qexp, [xvec]) -> coefficient, in sorted order."""
    lines = []
    for (qexp, xvec), coeff in series.sorted_terms():
        lines.append(f"({format_qexp(qexp)}, [{', '.join(str(m) for m in xvec)}]) -> {coeff.render()}")
    lines.append(f"O(q^{format_qexp(series.order)})")
    return "\n".join(lines)


def pretty(series: QxSeries, names: Optional[Sequence[str]] = None) -> str:
    """
    Compact human form such as 1 + 2*q + 2*q^4 + O(q^10).

    A factor z^k stands for e^(i k z).
    """
    names = list(names) if names else [f"x{v}" for v in range(series.dim)]
    chunks = []
    for (qexp, xvec), coeff in series.sorted_terms():
        parts = []
        if qexp:
            parts.append("q" if qexp == 1 else (f"q^{qexp}" if qexp.denominator == 1 and qexp > 0 else f"q^({qexp})"))
        for name, m in zip(names, xvec):
            if m:
                parts.append(name if m == 1 else (f"{name}^{m}" if m > 0 else f"{name}^({m})"))
        monomial = "*".join(parts)
        sign = "+"
        if coeff.is_rational():
            value = coeff.as_rational()
            if value < 0:
                sign, value = "-", -value
            if not monomial:
                body = str(value)
            else:
                body = monomial if value == 1 else f"{value}*{monomial}"
        else:
            body = f"({coeff.render()})" + (f"*{monomial}" if monomial else "")
        chunks.append((sign, body))
    tail = f"O(q^{format_qexp(series.order)})" if series.order != INF else ""
    if not chunks:
        return tail or "0"
    text = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text + (f" + {tail}" if tail else "")


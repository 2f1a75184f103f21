"""
Exact rational and cyclotomic-field arithmetic.

Every coefficient the series engine stores is a CycloNum: an element of
Q(zeta_N) held as rational coordinates on the power basis
1, zeta_N, ..., zeta_N^(phi(N)-1). Values that turn out rational are kept in
Q(zeta_1) so integer-valued series never pay for root-of-unity bookkeeping.
"""

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

from sympy import Poly, divisors, factorint, symbols, totient

Rat = Fraction
Scalar = Union[int, Fraction, "CycloNum"]

_X = symbols("x")


class CycloError(ValueError):
    """Raised for an invalid cyclotomic order or an impossible promotion"""


def as_rat(value) -> Fraction:
    """
    Coerce int, Fraction or a "p/q" string into a Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise CycloError(f"not an exact rational: {value!r}")


def _tidy(value):
    # Keep integral coordinates as plain ints, they are much cheaper to add.
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> Tuple[int, ...]:
    """
    Integer coefficients of the n-th cyclotomic polynomial, constant term first.

    x^n - 1 is divided exactly by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise CycloError(f"cyclotomic order must be positive, got {n}")
    poly = Poly(_X ** n - 1, _X)
    for d in divisors(n)[:-1]:
        poly = poly.exquo(Poly(list(reversed(cyclotomic_coeffs(d))), _X))
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Power-basis coordinates of zeta_n^k for k = 0 .. n-1."""
    phi_coeffs = cyclotomic_coeffs(n)
    degree = len(phi_coeffs) - 1
    current = [0] * degree
    current[0] = 1
    rows = []
    for _ in range(n):
        rows.append(tuple(current))
        top = current[-1]
        current = [0] + current[:-1]
        if top:
            for i in range(degree):
                current[i] -= top * phi_coeffs[i]
    return tuple(rows)


def _mobius(n: int) -> int:
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> Tuple[Fraction, ...]:
    """
    Normalised trace Tr(zeta_n^j) / phi(n) for each basis index j.

    The trace of zeta_n^j is the Ramanujan sum mu(n/g) phi(n) / phi(n/g)
    with g = gcd(j, n), so the normalised value only depends on the element,
    not on the field it is written in.
    """
    weights = []
    for j in range(int(totient(n))):
        g = math.gcd(j, n)
        weights.append(Fraction(_mobius(n // g), int(totient(n // g))))
    return tuple(weights)


class CycloNum:
    """Element of the cyclotomic field Q(zeta_order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable):
        if order < 1:
            raise CycloError(f"cyclotomic order must be positive, got {order}")
        coeffs = tuple(_tidy(as_rat(c)) for c in coeffs)
        if len(coeffs) != len(_power_table(order)[0]):
            raise CycloError(f"Q(zeta_{order}) needs {len(_power_table(order)[0])} coordinates, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs

    # construction

    @classmethod
    def _raw(cls, order: int, coeffs: Tuple) -> "CycloNum":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, value) -> "CycloNum":
        return cls._raw(1, (_tidy(as_rat(value)),))

    @classmethod
    def from_powers(cls, order: int, powers: Mapping[int, object]) -> "CycloNum":
        """
        Build sum c_k zeta_order^k from a mapping k -> c_k.

        Exponents are taken modulo the order; the result is reduced to its
        canonical power-basis form.
        """
        if order < 1:
            raise CycloError(f"cyclotomic order must be positive, got {order}")
        acc = [0] * order
        for k, c in powers.items():
            if c:
                acc[k % order] += as_rat(c)
        return cls._from_exponents(order, acc)

    @classmethod
    def _from_exponents(cls, order: int, acc) -> "CycloNum":
        table = _power_table(order)
        coords = [0] * len(table[0])
        for k, c in enumerate(acc):
            if c:
                for i, r in enumerate(table[k]):
                    if r:
                        coords[i] += c * r
        return cls._raw(order, tuple(_tidy(c) for c in coords))._downgraded()

    def _downgraded(self) -> "CycloNum":
        if self.order != 1 and not any(self.coeffs[1:]):
            return CycloNum._raw(1, (self.coeffs[0],))
        return self

    # queries

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1 or not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise CycloError(f"{self.render()} is not rational")
        return Fraction(self.coeffs[0])

    def as_integer(self) -> int:
        value = self.as_rational()
        if value.denominator != 1:
            raise CycloError(f"{value} is not an integer")
        return value.numerator

    def to_complex(self) -> complex:
        total = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * k / self.order)
        return total

    def basis_strings(self) -> list:
        return [str(Fraction(c)) for c in self.coeffs]

    def render(self) -> str:
        """Power-basis text such as 1 - z8^2 + 1/2*z8^3."""
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            c = Fraction(c)
            if k == 0:
                body = str(abs(c))
            else:
                root = f"z{self.order}" if k == 1 else f"z{self.order}^{k}"
                body = root if abs(c) == 1 else f"{abs(c)}*{root}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    # arithmetic

    def promote(self, order: int) -> "CycloNum":
        """Rewrite this element inside Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order < 1 or order % self.order:
            raise CycloError(f"cannot promote Q(zeta_{self.order}) into Q(zeta_{order})")
        step = order // self.order
        acc = [0] * order
        for k, c in enumerate(self.coeffs):
            if c:
                acc[k * step] = c
        table = _power_table(order)
        coords = [0] * len(table[0])
        for k, c in enumerate(acc):
            if c:
                for i, r in enumerate(table[k]):
                    if r:
                        coords[i] += c * r
        return CycloNum._raw(order, tuple(_tidy(c) for c in coords))

    def _aligned(self, other: "CycloNum"):
        if self.order == other.order:
            return self, other
        common = math.lcm(self.order, other.order)
        return self.promote(common), other.promote(common)

    def __add__(self, other):
        other = as_cyclo(other)
        a, b = self._aligned(other)
        return CycloNum._raw(a.order, tuple(_tidy(x + y) for x, y in zip(a.coeffs, b.coeffs)))._downgraded()

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-as_cyclo(other))

    def __rsub__(self, other):
        return as_cyclo(other) + (-self)

    def __mul__(self, other):
        other = as_cyclo(other)
        if other.order == 1:
            return self._scaled(other.coeffs[0])
        if self.order == 1:
            return other._scaled(self.coeffs[0])
        a, b = self._aligned(other)
        n = a.order
        acc = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        acc[(i + j) % n] += x * y
        return CycloNum._from_exponents(n, acc)

    __rmul__ = __mul__

    def _scaled(self, factor) -> "CycloNum":
        if not factor:
            return ZERO
        if factor == 1:
            return self
        return CycloNum._raw(self.order, tuple(_tidy(c * factor) for c in self.coeffs))

    def __eq__(self, other):
        try:
            other = as_cyclo(other)
        except (CycloError, ValueError, TypeError):
            return NotImplemented
        a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        weights = _trace_weights(self.order)
        return hash(sum((Fraction(c) * w for c, w in zip(self.coeffs, weights)), Fraction(0)))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNum({self.order}, {self.render()!r})"


ZERO = CycloNum._raw(1, (0,))
ONE = CycloNum._raw(1, (1,))


def as_cyclo(value) -> CycloNum:
    if isinstance(value, CycloNum):
        return value
    return CycloNum.rational(value)


@lru_cache(maxsize=4096)
def cyclo_root(order: int, k: int) -> CycloNum:
    """zeta_order^k in canonical form."""
    if order < 1:
        raise CycloError(f"cyclotomic order must be positive, got {order}")
    return CycloNum._raw(order, _power_table(order)[k % order])._downgraded()


def exp_i_pi(angle) -> CycloNum:
    """
    e^(i*pi*angle) for a rational angle, as a root of unity of order 2*den(angle)
    """
    angle = as_rat(angle)
    return cyclo_root(2 * angle.denominator, angle.numerator)


def cyclo_add(a: Scalar, b: Scalar) -> CycloNum:
    return as_cyclo(a) + as_cyclo(b)


def cyclo_mul(a: Scalar, b: Scalar) -> CycloNum:
    return as_cyclo(a) * as_cyclo(b)


def cyclo_promote(a: CycloNum, order: int) -> CycloNum:
    return a.promote(order)


def cyclo_is_zero(a: Scalar) -> bool:
    return as_cyclo(a).is_zero()


def cyclo_to_complex(a: Scalar) -> complex:
    return as_cyclo(a).to_complex()


def root_counts_to_cyclo(order: int, counts: Dict[int, int], scale=1) -> CycloNum:
    """Turn accumulated root-of-unity counts {k: multiplicity} into scale * sum zeta^k."""
    if scale != 1:
        counts = {k: c * scale for k, c in counts.items()}
    return CycloNum.from_powers(order, counts)

"""
Turns parsed identity statements into runnable checks.

Elaboration walks each statement once with every summation index bound to
each of its values, so semantic problems (non-affine arguments, bad powers,
non-positive tau scales) surface before any series is built.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from engine.exactnum import exp_i_pi
from engine.qxseries import ArgSpec, QxSeries, ShiftSpec, product_to_order, sum_series
from engine.thetakernel import Monomial, f_ab, phi, pochhammer, psi, theta
from identity.parser import (
    ABin,
    ADiv,
    ANeg,
    ANum,
    ASym,
    BinOp,
    Expi,
    Expr,
    Fab,
    IdentityStmt,
    MExp,
    MInt,
    Mono,
    MQ,
    Neg,
    Num,
    PhiPsi,
    Poch,
    Pow,
    QVar,
    Ref,
    Script,
    Sum,
    Theta,
)

Affine = Dict[Tuple[str, ...], Fraction]

PI = ("pi",)
TAU = ("tau",)
PI_TAU = ("pi", "tau")


class DSLSemanticError(ValueError):
    """A statement parses but does not describe a computable identity."""

    def __init__(self, message: str, statement: Optional[str] = None):
        self.message = message
        self.statement = statement
        super().__init__(f"{statement}: {message}" if statement else message)


def _combine(left: Affine, right: Affine, sign: int = 1) -> Affine:
    out = dict(left)
    for key, value in right.items():
        out[key] = out.get(key, Fraction(0)) + sign * value
    return {k: v for k, v in out.items() if v}


def _multiply(left: Affine, right: Affine) -> Affine:
    out: Affine = {}
    for ka, va in left.items():
        for kb, vb in right.items():
            key = tuple(sorted(ka + kb))
            if len(key) > 1 and key != PI_TAU:
                raise DSLSemanticError(f"argument is not affine: {' * '.join(key)}")
            out[key] = out.get(key, Fraction(0)) + va * vb
    return {k: v for k, v in out.items() if v}


def affine(node, env: Dict[str, int]) -> Affine:
    """Evaluate an argument to {monomial: coefficient}; () is the constant term."""
    if isinstance(node, ANum):
        return {(): node.value} if node.value else {}
    if isinstance(node, ASym):
        if node.name in env:
            return {(): Fraction(env[node.name])} if env[node.name] else {}
        return {(node.name,): Fraction(1)}
    if isinstance(node, ABin):
        left, right = affine(node.left, env), affine(node.right, env)
        if node.op == "+":
            return _combine(left, right)
        if node.op == "-":
            return _combine(left, right, -1)
        return _multiply(left, right)
    if isinstance(node, ADiv):
        return {k: v / node.divisor for k, v in affine(node.operand, env).items()}
    if isinstance(node, ANeg):
        return {k: -v for k, v in affine(node.operand, env).items()}
    raise DSLSemanticError(f"not an argument: {node!r}")


@dataclass
class RunnableCheck:
    name: str
    order: Fraction
    variables: Tuple[str, ...]
    lhs: Expr
    rhs: Expr
    warnings: List[str] = field(default_factory=list)
    params: str = ""

    @property
    def dim(self) -> int:
        return len(self.variables)

    def sides(self, order=None) -> Tuple[QxSeries, QxSeries]:
        order = Fraction(order) if order is not None else self.order
        builder = SeriesBuilder(self.variables, self.name)
        return builder.build(self.lhs, order, {}), builder.build(self.rhs, order, {})


class SeriesBuilder:
    """Builds the series of an expression over the declared variables."""

    def __init__(self, variables: Sequence[str], statement: Optional[str] = None):
        self.variables = tuple(variables)
        self.dim = len(self.variables)
        self.statement = statement
        self.warnings: List[str] = []

    def fail(self, message: str):
        raise DSLSemanticError(message, self.statement)

    # arguments and monomials

    def arg_spec(self, node, env: Dict[str, int], tau_scale: Fraction = Fraction(1)) -> ArgSpec:
        try:
            terms = affine(node, env)
        except DSLSemanticError as exc:
            self.fail(exc.message)
        linear = [0] * self.dim
        a = b = Fraction(0)
        for key, value in terms.items():
            if key == PI:
                a = value
            elif key == PI_TAU:
                b = value
            elif len(key) == 1 and key[0] in self.variables:
                if value.denominator != 1:
                    self.fail(f"coefficient {value} of {key[0]} must be an integer")
                linear[self.variables.index(key[0])] = int(value)
            elif key == ():
                self.fail(f"argument has a constant term {value} that is not a multiple of pi")
            else:
                self.fail(f"argument term {'*'.join(key)} is not allowed")
        return ArgSpec(tuple(linear), ShiftSpec(a, b), tau_scale)

    def tau_scale(self, node, env: Dict[str, int]) -> Fraction:
        try:
            terms = affine(node, env)
        except DSLSemanticError as exc:
            self.fail(exc.message)
        if set(terms) != {TAU}:
            self.fail("the nome argument must be a rational multiple of tau")
        scale = terms[TAU]
        if scale <= 0:
            self.fail(f"tau scale must be positive, got {scale}")
        return scale

    def monomial(self, mono: Mono, env: Dict[str, int]) -> Monomial:
        sign = -1 if mono.negative else 1
        qexp = Fraction(0)
        xvec = [0] * self.dim
        angle = Fraction(0)
        for atom in mono.atoms:
            if isinstance(atom, MInt):
                if atom.value == 0:
                    sign = 0
                elif atom.value != 1:
                    self.fail(f"monomial coefficients must be 0 or 1, got {atom.value}")
            elif isinstance(atom, MQ):
                qexp += atom.exponent
            elif isinstance(atom, MExp):
                spec = self.arg_spec(atom.arg, env)
                xvec = [i + j for i, j in zip(xvec, spec.linear)]
                angle += spec.shift.a
                qexp += spec.shift.b / 2
        return Monomial(sign, qexp, tuple(xvec), angle)

    def pure_q(self, mono: Mono, env: Dict[str, int]) -> Fraction:
        value = self.monomial(mono, env)
        if value.sign != 1 or value.angle or any(value.xvec):
            self.fail("the pochhammer base must be a plain power of q")
        if value.qexp <= 0:
            self.fail(f"the pochhammer base needs a positive exponent, got {value.qexp}")
        return value.qexp

    # checking without building

    def check(self, node, env: Dict[str, int]) -> None:
        if isinstance(node, (Num, QVar)):
            return
        if isinstance(node, Ref):
            if node.name not in env:
                self.fail(f"unknown identifier {node.name!r}")
        elif isinstance(node, BinOp):
            self.check(node.left, env)
            self.check(node.right, env)
        elif isinstance(node, Neg):
            self.check(node.operand, env)
        elif isinstance(node, Pow):
            if not isinstance(node.base, QVar) and (node.exponent.denominator != 1 or node.exponent < 1):
                self.fail(f"power must be a positive integer, got {node.exponent}")
            self.check(node.base, env)
        elif isinstance(node, Theta):
            self.arg_spec(node.arg, env, self.tau_scale(node.tau, env))
        elif isinstance(node, PhiPsi):
            if node.power <= 0:
                self.fail(f"{node.func} needs a positive power of q, got {node.power}")
        elif isinstance(node, Poch):
            self.monomial(node.mono, env)
            self.pure_q(node.base, env)
        elif isinstance(node, Fab):
            a, b = self.monomial(node.a, env), self.monomial(node.b, env)
            if not a.sign or not b.sign:
                self.fail("f(a, b) needs non-zero arguments")
            if a.qexp + b.qexp <= 0:
                self.fail("f(a, b) diverges: ab needs a positive power of q")
        elif isinstance(node, Expi):
            self.arg_spec(node.arg, env)
        elif isinstance(node, Sum):
            count = node.hi - node.lo + 1
            if node.alternating and count > 0 and count % 2:
                self.warnings.append(
                    f"{self.statement}: alternating sum over {node.index} has {count} terms, "
                    "so it is not circular"
                )
            for k in range(node.lo, node.hi + 1):
                self.check(node.body, {**env, node.index: k})

    # building

    def build(self, node, order, env: Dict[str, int]) -> QxSeries:
        if isinstance(node, Num):
            return QxSeries.constant(self.dim, node.value)
        if isinstance(node, Ref):
            return QxSeries.constant(self.dim, env[node.name])
        if isinstance(node, QVar):
            return QxSeries.monomial(self.dim, 1, 1)
        if isinstance(node, BinOp):
            if node.op == "*":
                return product_to_order(
                    [lambda o: self.build(node.left, o, env), lambda o: self.build(node.right, o, env)], order
                )
            left, right = self.build(node.left, order, env), self.build(node.right, order, env)
            return left + right if node.op == "+" else left - right
        if isinstance(node, Neg):
            return -self.build(node.operand, order, env)
        if isinstance(node, Pow):
            if isinstance(node.base, QVar):
                return QxSeries.monomial(self.dim, 1, node.exponent)
            count = int(node.exponent)
            return product_to_order([lambda o: self.build(node.base, o, env)] * count, order)
        if isinstance(node, Theta):
            spec = self.arg_spec(node.arg, env, self.tau_scale(node.tau, env))
            return theta(node.kind, spec, self.dim, Fraction(order))
        if isinstance(node, PhiPsi):
            make = phi if node.func == "phi" else psi
            return make(node.sign, order, node.power).pad(self.dim)
        if isinstance(node, Poch):
            return pochhammer(self.monomial(node.mono, env), self.pure_q(node.base, env), order)
        if isinstance(node, Fab):
            return f_ab(self.monomial(node.a, env), self.monomial(node.b, env), order)
        if isinstance(node, Expi):
            spec = self.arg_spec(node.arg, env)
            return QxSeries.monomial(self.dim, exp_i_pi(spec.shift.a), spec.shift.b / 2, spec.linear)
        if isinstance(node, Sum):
            parts = []
            for k in range(node.lo, node.hi + 1):
                part = self.build(node.body, order, {**env, node.index: k})
                parts.append(-part if node.alternating and k % 2 else part)
            return sum_series(parts, self.dim)
        self.fail(f"cannot build {type(node).__name__}")


def elaborate_statement(stmt: IdentityStmt, order=None) -> RunnableCheck:
    builder = SeriesBuilder(stmt.variables, stmt.name)
    builder.check(stmt.lhs, {})
    builder.check(stmt.rhs, {})
    check_order = Fraction(order) if order is not None else stmt.order
    if check_order <= 0:
        raise DSLSemanticError(f"order must be positive, got {check_order}", stmt.name)
    return RunnableCheck(stmt.name, check_order, stmt.variables, stmt.lhs, stmt.rhs, builder.warnings)


def elaborate(script: Script, order=None) -> List[RunnableCheck]:
    """One RunnableCheck per statement, in source order."""
    return [elaborate_statement(stmt, order) for stmt in script.statements]


def expression_series(expr: Expr, order, variables: Sequence[str] = ()) -> QxSeries:
    """Build a single parsed expression, as the expand command does."""
    builder = SeriesBuilder(variables, "expand")
    builder.check(expr, {})
    return builder.build(expr, Fraction(order), {})

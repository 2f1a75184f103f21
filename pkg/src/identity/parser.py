"""
Parsing, AST and pretty-printing for the identity language.

parse() returns a Script of IdentityStmt nodes; format_script() prints one
back in a fully parenthesised form that parses to an equal AST. Syntax and
scoping problems raise DSLError with line, column, the expected token set and
a caret snippet of the offending line.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from lark import Lark, Token, Transformer, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken
from lark.exceptions import VisitError

from identity.grammar import FUNCTIONS, GRAMMAR, RESERVED

_PARSER_CACHE: Dict[str, Lark] = {}

_TOKEN_NAMES = {
    "LPAR": "(", "RPAR": ")", "LBRACE": "{", "RBRACE": "}", "PLUS": "+", "MINUS": "-", "STAR": "*",
    "SLASH": "/", "CIRCUMFLEX": "^", "SEMICOLON": ";", "COMMA": ",", "COLON": ":", "VBAR": "|",
    "$END": "end of input",
}


class DSLError(ValueError):
    """Syntax or scoping error in identity source, with position information."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 expected: Iterable[str] = (), source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted({_TOKEN_NAMES.get(t, t) for t in expected}))
        self.context = _caret_context(source, line, column)
        super().__init__(self.format_message())

    def format_message(self) -> str:
        where = f"line {self.line}, column {self.column}: " if self.line else ""
        text = where + self.message
        if self.context:
            text += "\n" + self.context
        if self.expected:
            text += "\nexpected one of: " + ", ".join(self.expected)
        return text


def _caret_context(source: Optional[str], line: Optional[int], column: Optional[int]) -> str:
    if not source or not line or line < 1:
        return ""
    lines = source.splitlines()
    if line > len(lines):
        return ""
    text = lines[line - 1]
    return f"    {text}\n    {' ' * max(0, (column or 1) - 1)}^"


# AST: affine arguments


@dataclass(frozen=True)
class ANum:
    value: Fraction


@dataclass(frozen=True)
class ASym:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ABin:
    op: str
    left: "Arg"
    right: "Arg"


@dataclass(frozen=True)
class ADiv:
    operand: "Arg"
    divisor: int


@dataclass(frozen=True)
class ANeg:
    operand: "Arg"


Arg = Union[ANum, ASym, ABin, ADiv, ANeg]


# AST: monomials inside poch and f


@dataclass(frozen=True)
class MInt:
    value: int


@dataclass(frozen=True)
class MQ:
    exponent: Fraction


@dataclass(frozen=True)
class MExp:
    arg: Arg


@dataclass(frozen=True)
class Mono:
    negative: bool
    atoms: Tuple[Union[MInt, MQ, MExp], ...]


# AST: expressions


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ref:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class QVar:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: Fraction
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Theta:
    kind: int
    arg: Arg
    tau: Arg
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PhiPsi:
    func: str
    sign: int
    power: Fraction


@dataclass(frozen=True)
class Poch:
    mono: Mono
    base: Mono


@dataclass(frozen=True)
class Fab:
    a: Mono
    b: Mono


@dataclass(frozen=True)
class Expi:
    arg: Arg


@dataclass(frozen=True)
class Sum:
    index: str
    lo: int
    hi: int
    alternating: bool
    body: "Expr"
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Expr = Union[Num, Ref, QVar, BinOp, Neg, Pow, Theta, PhiPsi, Poch, Fab, Expi, Sum]


@dataclass(frozen=True)
class IdentityStmt:
    name: str
    order: Fraction
    variables: Tuple[str, ...]
    lhs: Expr
    rhs: Expr
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Script:
    statements: Tuple[IdentityStmt, ...]

    def names(self) -> List[str]:
        return [s.name for s in self.statements]


@dataclass(frozen=True)
class _Vars:
    names: Tuple[Token, ...]


@dataclass(frozen=True)
class _Sign:
    name: Token


# tree -> AST


def _frac(num: Token, den: Optional[Token] = None, source: Optional[str] = None) -> Fraction:
    if den is None:
        return Fraction(int(num))
    if int(den) == 0:
        raise DSLError("division by zero", den.line, den.column, (), source)
    return Fraction(int(num), int(den))


class _ToAst(Transformer):
    def __init__(self, source: str):
        super().__init__()
        self.source = source

    def _error(self, message: str, token) -> DSLError:
        return DSLError(message, getattr(token, "line", None), getattr(token, "column", None), (), self.source)

    # top level

    def start(self, children):
        return Script(tuple(children))

    def expr_only(self, children):
        return children[0]

    def arg_only(self, children):
        return children[0]

    def identity(self, children):
        name, order = children[0], children[1]
        rest = children[2:]
        variables: Tuple[Token, ...] = ()
        if isinstance(rest[0], _Vars):
            variables = rest[0].names
            rest = rest[1:]
        lhs, rhs = rest
        return IdentityStmt(str(name), order, tuple(str(v) for v in variables), lhs, rhs, name.line, name.column)

    def vars_decl(self, children):
        return _Vars(tuple(children))

    def rat(self, children):
        return _frac(*children, source=self.source)

    # numbers and exponents

    def number(self, children):
        return Num(_frac(*children, source=self.source))

    def exp_int(self, children):
        return Fraction(int(children[0]))

    def exp_rat(self, children):
        return children[0]

    def sint_pos(self, children):
        return Fraction(int(children[0]))

    def sint_neg(self, children):
        return -Fraction(int(children[0]))

    def sint_frac(self, children):
        return _frac(children[0], children[1], self.source)

    def sint_neg_frac(self, children):
        return -_frac(children[0], children[1], self.source)

    # expressions

    def ref(self, children):
        token = children[0]
        return Ref(str(token), token.line, token.column)

    def qvar(self, children):
        return QVar()

    def add(self, children):
        return BinOp("+", children[0], children[1])

    def sub(self, children):
        return BinOp("-", children[0], children[1])

    def mul(self, children):
        return BinOp("*", children[0], children[1])

    def neg(self, children):
        operand = children[0]
        if isinstance(operand, Num):
            return Num(-operand.value)
        return Neg(operand)

    def pow(self, children):
        base, exponent = children
        line, column = _position(base)
        return Pow(base, exponent, line, column)

    def theta(self, children):
        token, arg, tau = children
        return Theta(int(str(token)[-1]), arg, tau, token.line, token.column)

    def phi(self, children):
        sign, power = children[0]
        return PhiPsi("phi", sign, power)

    def psi(self, children):
        sign, power = children[0]
        return PhiPsi("psi", sign, power)

    def sq_pos(self, children):
        return 1, children[0] if children else Fraction(1)

    def sq_neg(self, children):
        return -1, children[0] if children else Fraction(1)

    def poch(self, children):
        return Poch(children[0], children[1])

    def fab(self, children):
        return Fab(children[0], children[1])

    def expi(self, children):
        return Expi(children[0])

    def mono_pos(self, children):
        return Mono(False, tuple(children))

    def mono_neg(self, children):
        return Mono(True, tuple(children))

    def matom_int(self, children):
        return MInt(int(children[0]))

    def matom_q(self, children):
        return MQ(children[0] if children else Fraction(1))

    def matom_e(self, children):
        return MExp(children[0])

    def sumexpr(self, children):
        index = children[0]
        lo, hi = children[1], children[2]
        alternating = False
        if isinstance(children[3], _Sign):
            sign = children[3].name
            if str(sign) != str(index):
                raise self._error(f"sign (-1)^{sign} must use the summation index {index}", sign)
            alternating = True
        body = children[-1]
        return Sum(str(index), lo, hi, alternating, body, index.line, index.column)

    def sign(self, children):
        return _Sign(children[0])

    def bound_pos(self, children):
        return int(children[0])

    def bound_neg(self, children):
        return -int(children[0])

    def bound_arg(self, children):
        value = children[0]
        if not isinstance(value, ANum) or value.value.denominator != 1:
            raise self._error("summation bounds must be integer constants", _first_token(children))
        return int(value.value)

    # affine arguments, constants folded as they are built

    def anum(self, children):
        return ANum(Fraction(int(children[0])))

    def asym(self, children):
        token = children[0]
        return ASym(str(token), token.line, token.column)

    def api(self, children):
        return ASym("pi")

    def atau(self, children):
        return ASym("tau")

    def aneg(self, children):
        operand = children[0]
        if isinstance(operand, ANum):
            return ANum(-operand.value)
        return ANeg(operand)

    def aadd(self, children):
        left, right = children
        if isinstance(left, ANum) and isinstance(right, ANum):
            return ANum(left.value + right.value)
        return ABin("+", left, right)

    def asub(self, children):
        left, right = children
        if isinstance(left, ANum) and isinstance(right, ANum):
            return ANum(left.value - right.value)
        return ABin("-", left, right)

    def amul(self, children):
        left, right = children
        if isinstance(left, ANum) and isinstance(right, ANum):
            return ANum(left.value * right.value)
        return ABin("*", left, right)

    def adiv(self, children):
        operand, divisor = children
        if int(divisor) == 0:
            raise self._error("division by zero", divisor)
        if isinstance(operand, ANum):
            return ANum(operand.value / int(divisor))
        return ADiv(operand, int(divisor))


def _first_token(children):
    for child in children:
        if isinstance(child, Token):
            return child
    return None


def _position(node) -> Tuple[int, int]:
    return getattr(node, "line", 0), getattr(node, "column", 0)


# parsing entry points


def _get_parser() -> Lark:
    cached = _PARSER_CACHE.get("identity")
    if cached is not None:
        return cached
    parser = Lark(
        GRAMMAR,
        parser="lalr",
        lexer="contextual",
        start=["start", "expr_only", "arg_only"],
        propagate_positions=True,
        maybe_placeholders=False,
    )
    _PARSER_CACHE["identity"] = parser
    return parser


def _end_position(text: str) -> Tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


_IDENT_BEFORE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*$")


def _syntax_error(text: str, exc: UnexpectedInput) -> DSLError:
    line, column = getattr(exc, "line", -1), getattr(exc, "column", -1)
    if isinstance(exc, UnexpectedEOF) or line is None or line < 1:
        line, column = _end_position(text)
        return DSLError("unexpected end of input", line, column, getattr(exc, "expected", ()), text)
    if isinstance(exc, UnexpectedCharacters):
        char = text[exc.pos_in_stream] if exc.pos_in_stream < len(text) else ""
        return DSLError(f"unexpected character {char!r}", line, column, exc.allowed or (), text)
    if isinstance(exc, UnexpectedToken):
        token = exc.token
        if token.type == "$END":
            line, column = _end_position(text)
            return DSLError("unexpected end of input", line, column, exc.expected, text)
        if str(token) == "(" and token.start_pos is not None:
            match = _IDENT_BEFORE.search(text[: token.start_pos])
            if match and match.group(1) not in FUNCTIONS:
                start = match.start(1)
                fline = text.count("\n", 0, start) + 1
                fcol = start - (text.rfind("\n", 0, start) + 1) + 1
                return DSLError(f"unknown function {match.group(1)!r}", fline, fcol, sorted(FUNCTIONS), text)
        return DSLError(f"unexpected token {str(token)!r}", line, column, exc.expected, text)
    return DSLError(str(exc), line, column, (), text)


def _run(text: str, start: str):
    try:
        tree = _get_parser().parse(text, start=start)
        return _ToAst(text).transform(tree)
    except UnexpectedInput as exc:
        raise _syntax_error(text, exc) from None
    except VisitError as exc:
        if isinstance(exc.orig_exc, DSLError):
            raise exc.orig_exc from None
        raise


def parse(text: str) -> Script:
    """Parse a script of identity statements and check its names."""
    script = _run(text, "start")
    _resolve(script, text)
    return script


def parse_expr(text: str, variables: Sequence[str] = ()) -> Expr:
    """Parse a single expression over the given variables."""
    expr = _run(text, "expr_only")
    _Scope(text, tuple(variables)).expr(expr, frozenset())
    return expr


def parse_arg(text: str, variables: Sequence[str] = ()) -> Arg:
    """Parse a single affine argument such as 'y + pi*tau/2'."""
    arg = _run(text, "arg_only")
    _Scope(text, tuple(variables)).arg(arg, frozenset())
    return arg


# scoping


class _Scope:
    def __init__(self, source: str, variables: Tuple[str, ...]):
        self.source = source
        self.variables = variables

    def fail(self, message: str, node=None, line=None, column=None):
        if node is not None:
            line, column = _position(node)
        raise DSLError(message, line or None, column or None, (), self.source)

    def declare(self, names: Sequence[str], line: int, column: int) -> None:
        seen = set()
        for name in names:
            if name in RESERVED:
                self.fail(f"{name!r} is reserved and cannot be a variable", line=line, column=column)
            if name in seen:
                self.fail(f"variable {name!r} declared twice", line=line, column=column)
            seen.add(name)
        if len(names) > 2:
            self.fail(f"at most two formal variables are supported, got {len(names)}", line=line, column=column)

    def expr(self, node, indices: frozenset) -> None:
        if isinstance(node, Ref):
            if node.name in indices:
                return
            if node.name in self.variables:
                self.fail(f"variable {node.name!r} may only appear inside a function argument", node)
            self.fail(f"unknown identifier {node.name!r}", node)
        elif isinstance(node, BinOp):
            self.expr(node.left, indices)
            self.expr(node.right, indices)
        elif isinstance(node, Neg):
            self.expr(node.operand, indices)
        elif isinstance(node, Pow):
            self.expr(node.base, indices)
        elif isinstance(node, Theta):
            self.arg(node.arg, indices)
            self.arg(node.tau, indices)
        elif isinstance(node, (Poch, Fab)):
            for mono in (node.mono, node.base) if isinstance(node, Poch) else (node.a, node.b):
                for atom in mono.atoms:
                    if isinstance(atom, MExp):
                        self.arg(atom.arg, indices)
        elif isinstance(node, Expi):
            self.arg(node.arg, indices)
        elif isinstance(node, Sum):
            if node.index in RESERVED or node.index in self.variables or node.index in indices:
                self.fail(f"summation index {node.index!r} clashes with another name", node)
            self.expr(node.body, indices | {node.index})

    def arg(self, node, indices: frozenset) -> None:
        if isinstance(node, ASym):
            if node.name in ("pi", "tau") or node.name in self.variables or node.name in indices:
                return
            self.fail(f"unknown identifier {node.name!r}", node)
        elif isinstance(node, ABin):
            self.arg(node.left, indices)
            self.arg(node.right, indices)
        elif isinstance(node, (ADiv, ANeg)):
            self.arg(node.operand, indices)


def _resolve(script: Script, source: str) -> None:
    seen = set()
    for stmt in script.statements:
        if stmt.name in seen:
            raise DSLError(f"duplicate identity name {stmt.name!r}", stmt.line, stmt.column, (), source)
        seen.add(stmt.name)
        scope = _Scope(source, stmt.variables)
        scope.declare(stmt.variables, stmt.line, stmt.column)
        scope.expr(stmt.lhs, frozenset())
        scope.expr(stmt.rhs, frozenset())


# printing


def _format_rat(value: Fraction) -> str:
    if value.denominator == 1 and value >= 0:
        return str(value.numerator)
    return f"({value})"


def _format_exponent(value: Fraction) -> str:
    return _format_rat(value)


def format_arg(node: Arg) -> str:
    if isinstance(node, ANum):
        return _format_rat(node.value)
    if isinstance(node, ASym):
        return node.name
    if isinstance(node, ABin):
        return f"({format_arg(node.left)} {node.op} {format_arg(node.right)})"
    if isinstance(node, ADiv):
        return f"({format_arg(node.operand)} / {node.divisor})"
    if isinstance(node, ANeg):
        return f"(-{format_arg(node.operand)})"
    raise TypeError(f"not an argument node: {node!r}")


def _format_mono(mono: Mono) -> str:
    atoms = []
    for atom in mono.atoms:
        if isinstance(atom, MInt):
            atoms.append(str(atom.value))
        elif isinstance(atom, MQ):
            atoms.append("q" if atom.exponent == 1 else f"q^{_format_exponent(atom.exponent)}")
        else:
            atoms.append(f"e({format_arg(atom.arg)})")
    return ("-" if mono.negative else "") + "*".join(atoms)


def format_expr(node: Expr) -> str:
    if isinstance(node, Num):
        return _format_rat(node.value)
    if isinstance(node, Ref):
        return node.name
    if isinstance(node, QVar):
        return "q"
    if isinstance(node, BinOp):
        return f"({format_expr(node.left)} {node.op} {format_expr(node.right)})"
    if isinstance(node, Neg):
        return f"(-{format_expr(node.operand)})"
    if isinstance(node, Pow):
        base = format_expr(node.base)
        if isinstance(node.base, Pow):
            base = f"({base})"
        return f"{base}^{_format_exponent(node.exponent)}"
    if isinstance(node, Theta):
        return f"theta{node.kind}({format_arg(node.arg)} | {format_arg(node.tau)})"
    if isinstance(node, PhiPsi):
        power = "" if node.power == 1 else f"^{_format_exponent(node.power)}"
        return f"{node.func}({'-' if node.sign < 0 else ''}q{power})"
    if isinstance(node, Poch):
        return f"poch({_format_mono(node.mono)}; {_format_mono(node.base)})"
    if isinstance(node, Fab):
        return f"f({_format_mono(node.a)}, {_format_mono(node.b)})"
    if isinstance(node, Expi):
        return f"e({format_arg(node.arg)})"
    if isinstance(node, Sum):
        sign = f" sign (-1)^{node.index}" if node.alternating else ""
        return f"(sum {node.index} in {node.lo}..{node.hi}{sign}: ({format_expr(node.body)}))"
    raise TypeError(f"not an expression node: {node!r}")


def format_statement(stmt: IdentityStmt) -> str:
    lines = [f"identity {stmt.name} {{", f"    order {stmt.order};"]
    if stmt.variables:
        lines.append(f"    vars {', '.join(stmt.variables)};")
    lines.append(f"    {format_expr(stmt.lhs)}")
    lines.append(f"        == {format_expr(stmt.rhs)}")
    lines.append("}")
    return "\n".join(lines)


def format_script(script: Script) -> str:
    return "\n\n".join(format_statement(s) for s in script.statements) + "\n"

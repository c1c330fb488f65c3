"""
Expression tree for bivariate real functions.

Nodes are frozen dataclasses, so trees are immutable, hashable and compare
structurally. ``to_text`` prints a tree in the input grammar such that
``parse(to_text(e)) == e`` for every tree the parser can produce.
"""
from dataclasses import dataclass
from functools import singledispatch
from typing import FrozenSet

VARIABLES = ('x', 'y')
CONSTANTS = ('pi', 'e')
FUNCTIONS = ('exp', 'log', 'sin', 'cos', 'sqrt', 'abs')


class Expr:
    """Base class of all expression nodes."""

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Const(Expr):
    name: str


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    left: Expr
    right: Expr

    symbol = '?'
    level = 0


@dataclass(frozen=True)
class Add(BinOp):
    symbol = '+'
    level = 1


@dataclass(frozen=True)
class Sub(BinOp):
    symbol = '-'
    level = 1


@dataclass(frozen=True)
class Mul(BinOp):
    symbol = '*'
    level = 2


@dataclass(frozen=True)
class Div(BinOp):
    symbol = '/'
    level = 2


@dataclass(frozen=True)
class Pow(BinOp):
    symbol = '^'
    level = 4


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr


ZERO = Num(0.0)
ONE = Num(1.0)


# Precedence levels of the grammar: sums 1, products 2, unary minus 3, powers 4, atoms 5.
NEG_PRECEDENCE = 3
ATOM_PRECEDENCE = 5


@singledispatch
def precedence(e: Expr) -> int:
    return ATOM_PRECEDENCE


@precedence.register
def _(e: BinOp) -> int:
    return e.level


@precedence.register
def _(e: Neg) -> int:
    return NEG_PRECEDENCE


@precedence.register
def _(e: Num) -> int:
    # Negative literals only appear after constant folding; they print as unary minus.
    return NEG_PRECEDENCE if e.value < 0 else ATOM_PRECEDENCE


@singledispatch
def to_text(e: Expr) -> str:
    raise TypeError(f"not an expression node: {e!r}")


@to_text.register
def _(e: Num) -> str:
    return repr(float(e.value))


@to_text.register
def _(e: Const) -> str:
    return e.name


@to_text.register
def _(e: Var) -> str:
    return e.name


@to_text.register
def _(e: Func) -> str:
    return f"{e.name}({to_text(e.arg)})"


@to_text.register
def _(e: Neg) -> str:
    inner = to_text(e.operand)
    # factor := '-' factor | power, so powers and atoms need no parentheses
    if precedence(e.operand) < NEG_PRECEDENCE:
        inner = f"({inner})"
    return f"-{inner}"


@to_text.register
def _(e: BinOp) -> str:
    left, right = to_text(e.left), to_text(e.right)
    if isinstance(e, Pow):
        # power := atom ('^' factor)?
        if precedence(e.left) < ATOM_PRECEDENCE:
            left = f"({left})"
        if precedence(e.right) < NEG_PRECEDENCE:
            right = f"({right})"
        return f"{left}^{right}"
    # Left-associative: the right operand needs parentheses at equal precedence.
    if precedence(e.left) < e.level:
        left = f"({left})"
    if precedence(e.right) <= e.level:
        right = f"({right})"
    return f"{left} {e.symbol} {right}"


def free_variables(e: Expr) -> FrozenSet[str]:
    """Variables the expression depends on syntactically."""
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, (Num, Const)):
        return frozenset()
    if isinstance(e, Neg):
        return free_variables(e.operand)
    if isinstance(e, Func):
        return free_variables(e.arg)
    if isinstance(e, BinOp):
        return free_variables(e.left) | free_variables(e.right)
    raise TypeError(f"not an expression node: {e!r}")


def is_constant(e: Expr) -> bool:
    return not free_variables(e)

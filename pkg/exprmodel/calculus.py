"""
Evaluation and symbolic differentiation of expression trees.

``evaluate`` works on floats and on numpy arrays alike (x and y are
broadcast against each other), so quadrature can evaluate a whole node grid
in one call. Derivatives are simplified only by constant folding and the
0/1 identities; no other algebra is applied.
"""
import math
from functools import singledispatch

import numpy as np

from core.exceptions import DomainError, NotDifferentiable

from .nodes import (
    ONE, ZERO, Add, BinOp, Const, Div, Expr, Func, Mul, Neg, Num, Pow, Sub, Var,
    free_variables, is_constant, to_text,
)

CONSTANT_VALUES = {'pi': math.pi, 'e': math.e}

UNARY = {
    'exp': np.exp,
    'log': np.log,
    'sin': np.sin,
    'cos': np.cos,
    'sqrt': np.sqrt,
    'abs': np.abs,
}


# Evaluation

def evaluate(e: Expr, x, y):
    """
    Evaluate ``e`` at (x, y) in double precision.

    Scalars in give a float out; arrays are broadcast and give an array.
    Raises DomainError naming the first offending node and point.
    """
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    X, Y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    with np.errstate(all='ignore'):
        value = _eval(e, X, Y)
    value = np.broadcast_to(value, X.shape)
    if scalar:
        return float(value)
    return np.array(value, dtype=float)


def _fail(node, mask, X, Y, reason):
    mask = np.broadcast_to(mask, X.shape)
    index = np.unravel_index(np.argmax(mask), X.shape) if X.shape else ()
    raise DomainError(to_text(node), float(X[index]), float(Y[index]), reason)


def _guard(node, mask, X, Y, reason):
    if np.any(mask):
        _fail(node, mask, X, Y, reason)


def _finite(node, value, X, Y):
    _guard(node, ~np.isfinite(value), X, Y, 'non-finite result')
    return value


@singledispatch
def _eval(e: Expr, X, Y):
    raise TypeError(f"not an expression node: {e!r}")


@_eval.register
def _(e: Num, X, Y):
    return e.value


@_eval.register
def _(e: Const, X, Y):
    return CONSTANT_VALUES[e.name]


@_eval.register
def _(e: Var, X, Y):
    return X if e.name == 'x' else Y


@_eval.register
def _(e: Neg, X, Y):
    return -_eval(e.operand, X, Y)


@_eval.register
def _(e: BinOp, X, Y):
    left = _eval(e.left, X, Y)
    right = _eval(e.right, X, Y)
    if isinstance(e, Add):
        value = left + right
    elif isinstance(e, Sub):
        value = left - right
    elif isinstance(e, Mul):
        value = left * right
    elif isinstance(e, Div):
        _guard(e, np.equal(right, 0.0), X, Y, 'division by zero')
        value = left / right
    else:
        base, exponent = np.asarray(left), np.asarray(right)
        _guard(e, (base == 0.0) & (exponent < 0.0), X, Y, 'division by zero')
        _guard(e, (base < 0.0) & (np.floor(exponent) != exponent), X, Y,
               'negative base with non-integer exponent')
        value = np.power(base, exponent)
    return _finite(e, value, X, Y)


@_eval.register
def _(e: Func, X, Y):
    arg = _eval(e.arg, X, Y)
    if e.name == 'log':
        _guard(e, np.less_equal(arg, 0.0), X, Y, 'log of a non-positive value')
    elif e.name == 'sqrt':
        _guard(e, np.less(arg, 0.0), X, Y, 'sqrt of a negative value')
    return _finite(e, UNARY[e.name](arg), X, Y)


# Folding constructors: constant folding plus the 0/1 identities, nothing else.

def _fold(node: Expr) -> Expr:
    try:
        value = evaluate(node, 0.0, 0.0)
    except DomainError:
        return node
    return Num(value)


def _both_num(a: Expr, b: Expr) -> bool:
    return isinstance(a, Num) and isinstance(b, Num)


def add(a: Expr, b: Expr) -> Expr:
    if _both_num(a, b):
        return _fold(Add(a, b))
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _both_num(a, b):
        return _fold(Sub(a, b))
    if b == ZERO:
        return a
    if a == ZERO:
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _both_num(a, b):
        return _fold(Mul(a, b))
    if a == ZERO or b == ZERO:
        return ZERO
    if a == ONE:
        return b
    if b == ONE:
        return a
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _both_num(a, b):
        return _fold(Div(a, b))
    if b == ONE:
        return a
    if a == ZERO:
        return ZERO
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Num):
        return Num(-a.value)
    return Neg(a)


def power(a: Expr, b: Expr) -> Expr:
    if _both_num(a, b):
        return _fold(Pow(a, b))
    if b == ZERO:
        return ONE
    if b == ONE:
        return a
    return Pow(a, b)


def func(name: str, arg: Expr) -> Expr:
    node = Func(name, arg)
    if isinstance(arg, Num):
        return _fold(node)
    return node


TWO = Num(2.0)


# Differentiation

@singledispatch
def _derive(e: Expr, var: str) -> Expr:
    raise TypeError(f"not an expression node: {e!r}")


@_derive.register
def _(e: Var, var: str) -> Expr:
    return ONE if e.name == var else ZERO


@_derive.register
def _(e: Neg, var: str) -> Expr:
    return neg(differentiate(e.operand, var))


@_derive.register
def _(e: Add, var: str) -> Expr:
    return add(differentiate(e.left, var), differentiate(e.right, var))


@_derive.register
def _(e: Sub, var: str) -> Expr:
    return sub(differentiate(e.left, var), differentiate(e.right, var))


@_derive.register
def _(e: Mul, var: str) -> Expr:
    u, v = e.left, e.right
    return add(mul(differentiate(u, var), v), mul(u, differentiate(v, var)))


@_derive.register
def _(e: Div, var: str) -> Expr:
    u, v = e.left, e.right
    numerator = sub(mul(differentiate(u, var), v), mul(u, differentiate(v, var)))
    return div(numerator, power(v, TWO))


@_derive.register
def _(e: Pow, var: str) -> Expr:
    u, n = e.left, e.right
    du = differentiate(u, var)
    if is_constant(n):
        # n * u^(n-1) * u'
        return mul(mul(n, power(u, sub(n, ONE))), du)
    # Variable exponent: the parser only admits positive bases here.
    dn = differentiate(n, var)
    return mul(e, add(mul(dn, func('log', u)), div(mul(n, du), u)))


@_derive.register
def _(e: Func, var: str) -> Expr:
    u = e.arg
    du = differentiate(u, var)
    if e.name == 'exp':
        return mul(e, du)
    if e.name == 'log':
        return div(du, u)
    if e.name == 'sin':
        return mul(func('cos', u), du)
    if e.name == 'cos':
        return neg(mul(func('sin', u), du))
    if e.name == 'sqrt':
        return div(du, mul(TWO, e))
    raise NotDifferentiable(to_text(e))


def differentiate(e: Expr, var: str) -> Expr:
    """Symbolic partial derivative of ``e`` with respect to ``var``."""
    if var not in free_variables(e):
        return ZERO
    return _derive(e, var)


def _mixed(e: Expr, first: str, second: str) -> Expr:
    # Terms that depend on at most one variable have a vanishing mixed partial,
    # which lets separable abs() terms through.
    if not {'x', 'y'} <= free_variables(e):
        return ZERO
    if isinstance(e, Add):
        return add(_mixed(e.left, first, second), _mixed(e.right, first, second))
    if isinstance(e, Sub):
        return sub(_mixed(e.left, first, second), _mixed(e.right, first, second))
    if isinstance(e, Neg):
        return neg(_mixed(e.operand, first, second))
    return differentiate(differentiate(e, first), second)


def differentiate_xy(e: Expr) -> Expr:
    """d2e/dxdy, differentiating in x first and then in y."""
    return _mixed(e, 'x', 'y')


def differentiate_yx(e: Expr) -> Expr:
    """d2e/dydx, the other order; equal to differentiate_xy pointwise for C2 trees."""
    return _mixed(e, 'y', 'x')

"""
Expression corpora: the built-in smooth corpus, newline-delimited corpus
files, and a seeded random-tree generator for property checks.
"""
from pathlib import Path
from typing import List

from .nodes import Add, Const, Div, Expr, Func, Mul, Neg, Num, Pow, Sub, Var

# Polynomials up to degree 6 and exp/sin/cos composites, all C-infinity.
SMOOTH_CORPUS = [
    'x*y',
    'x^2*y^2',
    'x^3*y',
    'x*y^3',
    'x^2*y + x*y^2',
    'x^3*y^3',
    'x^4*y^2',
    '(x + y)^4',
    'x^6 + y^6 + x^3*y^3',
    'x^2 + y^2',
    '(1 + x)^3*(2 + y)^2',
    'x^5*y - x*y^5',
    'exp(x + y)',
    'exp(x*y)',
    'exp(x)*exp(2*y)',
    'exp(-x*y)',
    'x*exp(y)',
    'exp(x + y)*x*y',
    'sin(x)*sin(y)',
    'cos(x)*cos(y)',
    'sin(x + y)',
    'cos(x*y)',
    'exp(x)*sin(y)',
    'sin(x)*y^2',
]


def load_corpus(path) -> List[str]:
    """Read one expression per line; blank lines and '#' comments are skipped."""
    lines = Path(path).read_text(encoding='utf-8').splitlines()
    return [line.strip() for line in lines if line.strip() and not line.strip().startswith('#')]


def random_tree(rng, depth: int = 3, smooth: bool = True) -> Expr:
    """
    Random expression tree drawn with a numpy Generator.

    With ``smooth`` the tree avoids abs, log, sqrt and division, so it is
    defined and C-infinity everywhere; otherwise every node type may appear
    (useful for printing round-trips, not for evaluation).
    """
    if depth <= 0 or rng.random() < 0.25:
        return _leaf(rng)
    kinds = ['add', 'sub', 'mul', 'neg', 'pow', 'func']
    if not smooth:
        kinds.append('div')
    kind = kinds[rng.integers(len(kinds))]
    if kind == 'neg':
        return Neg(random_tree(rng, depth - 1, smooth))
    if kind == 'pow':
        return Pow(random_tree(rng, depth - 1, smooth), Num(float(rng.integers(0, 4))))
    if kind == 'func':
        names = ['exp', 'sin', 'cos'] if smooth else ['exp', 'sin', 'cos', 'log', 'sqrt', 'abs']
        name = names[rng.integers(len(names))]
        arg = random_tree(rng, depth - 1, smooth)
        if name == 'exp':
            # keep magnitudes moderate
            arg = Func('sin', arg)
        return Func(name, arg)
    node = {'add': Add, 'sub': Sub, 'mul': Mul, 'div': Div}[kind]
    return node(random_tree(rng, depth - 1, smooth), random_tree(rng, depth - 1, smooth))


def _leaf(rng) -> Expr:
    roll = rng.random()
    if roll < 0.35:
        return Var('x')
    if roll < 0.7:
        return Var('y')
    if roll < 0.8:
        return Const(('pi', 'e')[rng.integers(2)])
    return Num(float(round(rng.uniform(0.1, 3.0), 3)))

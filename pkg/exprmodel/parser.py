"""
Recursive-descent parser for the expression grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | 'x' | 'y' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'

Error offsets are byte offsets into the UTF-8 encoded source.
"""
import logging
import math
import re
from typing import List, NamedTuple

from core.exceptions import DomainError, ExpressionSyntaxError, UnknownIdentifier

from .calculus import evaluate
from .nodes import (
    CONSTANTS, FUNCTIONS, VARIABLES, Add, Const, Div, Expr, Func, Mul, Neg, Num,
    Pow, Sub, Var, is_constant,
)

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)

BINARY_NODES = {'+': Add, '-': Sub, '*': Mul, '/': Div}


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ExpressionSyntaxError(
                f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text
            )
        kind = match.lastgroup
        if kind != 'ws':
            tokens.append(Token(kind, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(Token('end', '', _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode('utf-8'))


def _positive_base(e: Expr) -> bool:
    """Bases for which any real exponent keeps the power real-valued."""
    if isinstance(e, Num):
        return e.value > 0
    if isinstance(e, Const):
        return True
    return isinstance(e, Func) and e.name in ('exp', 'sqrt')


def _non_negative_integer(e: Expr) -> bool:
    if not is_constant(e):
        return False
    try:
        value = evaluate(e, 0.0, 0.0)
    except DomainError:
        return False
    return math.isfinite(value) and value >= 0 and float(value).is_integer()


class Parser:
    """One-shot parser over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: Token = None):
        token = token or self.current
        found = 'end of input' if token.kind == 'end' else repr(token.text)
        raise ExpressionSyntaxError(f"{message}, found {found}", token.offset, self.text)

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind != 'op':
            self.error(f"expected {text!r}")
        return self.advance()

    def parse(self) -> Expr:
        if self.current.kind == 'end':
            self.error('empty expression')
        tree = self.expr()
        if self.current.kind != 'end':
            self.error('unexpected token')
        return tree

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            op = self.advance().text
            node = BINARY_NODES[op](node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.current.kind == 'op' and self.current.text in '*/':
            op = self.advance().text
            node = BINARY_NODES[op](node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.current.kind == 'op' and self.current.text == '-':
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.current.kind == 'op' and self.current.text == '^':
            caret = self.advance()
            exponent = self.factor()
            if not (_positive_base(base) or _non_negative_integer(exponent)):
                self.error(
                    'exponent must be a non-negative integer unless the base is '
                    'a positive literal, pi, e, exp(...) or sqrt(...)',
                    caret,
                )
            return Pow(base, exponent)
        return base

    def atom(self) -> Expr:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return Num(float(token.text))
        if token.kind == 'name':
            self.advance()
            if token.text in VARIABLES:
                return Var(token.text)
            if token.text in CONSTANTS:
                return Const(token.text)
            if token.text in FUNCTIONS:
                self.expect('(')
                arg = self.expr()
                self.expect(')')
                return Func(token.text, arg)
            raise UnknownIdentifier(token.text, token.offset, self.text)
        if token.kind == 'op' and token.text == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        self.error('expected a number, variable, constant, function or "("')


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree."""
    if not text or not text.strip():
        raise ExpressionSyntaxError('empty expression', 0, text or '')
    tree = Parser(text).parse()
    logger.debug('parsed %r', text)
    return tree

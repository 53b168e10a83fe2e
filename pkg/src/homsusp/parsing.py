"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base (('^' | '**') uint)?
    base   := identifier | integer | integer '/' integer | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import Polynomial, VariableContext

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<pow>\*\*|\^)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VariableContext):
        self.text = text
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, *_position(self.text, tok[2]))

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value:
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[1] == "-":
            self.advance()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[1] == "*":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "pow":
            self.advance()
            tok = self.peek()
            if tok[0] != "num":
                self.error("exponent must be a nonnegative integer")
            self.advance()
            base = base ** int(tok[1])
        return base

    def base(self) -> Polynomial:
        tok = self.peek()
        kind, value, _ = tok
        if kind == "num":
            self.advance()
            if self.peek()[1] == "/":
                self.advance()
                den = self.peek()
                if den[0] != "num":
                    self.error("denominator must be an integer")
                self.advance()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                return Polynomial.constant(self.ctx, Fraction(int(value), int(den[1])))
            return Polynomial.constant(self.ctx, int(value))
        if kind == "ident":
            self.advance()
            if value not in self.ctx:
                self.error(f"undeclared identifier {value!r}", tok)
            return Polynomial.variable(self.ctx, value)
        if value == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {value or 'end of input'!r}")


def parse_polynomial(text: str, variables: VariableContext | Sequence[str]) -> Polynomial:
    """Parse ``text`` into an exact polynomial over the declared variables.

    >>> str(parse_polynomial("x*(x*y+1)", ["x", "y"]))
    'x^2*y + x'
    """
    ctx = variables if isinstance(variables, VariableContext) else VariableContext(variables)
    if not text or not text.strip():
        raise ParseError("empty expression", 1, 1)
    return _Parser(text, ctx).parse()

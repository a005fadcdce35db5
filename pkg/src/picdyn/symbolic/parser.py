"""Parser for rational expressions in named variables.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/")? factor)*      # juxtaposition multiplies: 3a, 2(x+1)
    factor := ("+" | "-") factor | power
    power  := atom (("^" | "**") ["-"] INTEGER)?
    atom   := INTEGER | DECIMAL | NAME | "(" expr ")"

Names are identifiers ``[A-Za-z_][A-Za-z0-9_]*``; Greek letters such as ``α``
are accepted as aliases of their spelled-out names.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ratfunc import GREEK_INV, RationalFunction

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_Ͱ-Ͽ][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, len(text) - len(text[pos:].lstrip()))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "name":
            val = _normalize_name(val)
        out.append((kind, val, start))
        pos = m.end()
    return out


def _normalize_name(name: str) -> str:
    if name[0] in GREEK_INV:
        return GREEK_INV[name[0]] + name[1:]
    return name


class _Parser:
    def __init__(self, text: str, ctx):
        self.text = text
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0
        self.names = ctx.names()

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", self.text, tok[2])

    def parse(self) -> RationalFunction:
        if not self.tokens:
            raise ParseError("empty expression", self.text, 0)
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", self.text, tok[2])
        return value

    def expr(self):
        value = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                return value
            if tok[0] == "op" and tok[1] in ("*", "/"):
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", self.text, tok[2])
                    value = value / rhs
            elif tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "("):
                value = value * self.power()
            else:
                return value

    def factor(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            sign = 1
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "-":
                self.take()
                sign = -1
            ex = self.take()
            if ex[0] != "num" or not ex[1].isdigit():
                raise ParseError("exponent must be an integer", self.text, ex[2])
            k = sign * int(ex[1])
            if k < 0 and base.is_zero():
                raise ParseError("division by zero", self.text, ex[2])
            return base**k
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return RationalFunction.constant(self.ctx, Fraction(val))
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown name {val!r}", self.text, pos)
            return RationalFunction.variable(self.ctx, val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", self.text, pos)


def parse_expression(text: str, ctx) -> RationalFunction:
    """Parse into a reduced rational function over the given context's names."""
    return _Parser(text, ctx).parse()

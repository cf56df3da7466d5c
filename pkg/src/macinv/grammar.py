"""Polynomial text grammar shared by the library and the CLI.

Accepted input is a sum of terms ``[coeff][*]var^exp[*var^exp...]`` with
integer or ``p/q`` coefficients and variables ``x1, x2, ...`` (series
side) or ``y1, y2, ...`` (dual side). Parentheses and integer powers of
parenthesised expressions are accepted as well. Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import DualPoly, Jet, unit_vector


class ParseError(ValueError):
    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xy])(?P<idx>\d+)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            idx = int(m.group("idx"))
            if idx < 1:
                raise ParseError("variable indices start at 1", start, text)
            tokens.append(("var", (m.group("var"), idx - 1), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    # Values are dicts {exponent tuple: Fraction} over a fixed variable count.

    def __init__(self, text, tokens, nvars):
        self.text = text
        self.tokens = tokens
        self.i = 0
        self.m = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}")
        self.take()

    # arithmetic on term dicts
    def add(self, a, b, sign=1):
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + sign * c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return out

    def mul(self, a, b):
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return {e: c for e, c in out.items() if c}

    def const(self, c):
        return {(0,) * self.m: Fraction(c)} if c else {}

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.add({}, self.term(), sign)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                value = self.add(value, self.term(), -1 if tok[1] == "-" else 1)
            else:
                return value

    def starts_atom(self, tok):
        return tok[0] in ("num", "var") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = self.mul(value, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                at = self.peek()
                divisor = self.power()
                if not divisor or any(any(e) for e in divisor):
                    self.fail("division only by a nonzero constant", at)
                (c,) = divisor.values()
                value = {e: v / c for e, v in value.items()}
            elif self.starts_atom(tok):
                value = self.mul(value, self.power())
            else:
                return value

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok[0] != "num":
                self.fail("exponent must be a non-negative integer")
            self.take()
            out = self.const(1)
            for _ in range(exp_tok[1]):
                out = self.mul(out, base)
            return out
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return self.const(tok[1])
        if tok[0] == "var":
            self.take()
            return {unit_vector(self.m, tok[1][1]): Fraction(1)}
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            value = self.expr()
            self.expect_op(")")
            return value
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.power()
            return inner if tok[1] == "+" else {e: -c for e, c in inner.items()}
        if tok[0] == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok[1]!r}")


def parse_poly(text, nvars=None, side=None, bound=None):
    """Parse ``text`` into a :class:`DualPoly` (y variables) or :class:`Jet` (x variables).

    ``nvars`` overrides the inferred variable count (the highest index
    used); ``side`` ('x' or 'y') forces the ring and is required to place
    a constant. Raises :class:`ParseError` with a character position.
    """
    if not isinstance(text, str):
        raise ParseError("input must be a string", 0, "")
    tokens = _tokenize(text)
    letters = {}
    top = 0
    for kind, val, pos in tokens:
        if kind == "var":
            letters.setdefault(val[0], pos)
            top = max(top, val[1] + 1)
    if len(letters) > 1:
        raise ParseError("cannot mix x and y variables", max(letters.values()), text)
    found = next(iter(letters), None)
    if side is not None and found is not None and found != side:
        raise ParseError(f"expected {side}-variables", letters[found], text)
    side = side or found or "y"
    if nvars is None:
        nvars = max(top, 1)
    elif nvars < top:
        raise ParseError(f"variable index {top} exceeds declared count {nvars}", 0, text)
    terms = _Parser(text, tokens, nvars).parse()
    if side == "y":
        return DualPoly._raw(nvars, terms)
    return Jet._raw(nvars, terms, bound=None) if bound is None else Jet(nvars, terms, bound=bound)


def parse_dual(text, nvars=None):
    return parse_poly(text, nvars=nvars, side="y")


def parse_jet(text, nvars=None, bound=None):
    return parse_poly(text, nvars=nvars, side="x", bound=bound)

"""Infix text form of expressions.

Grammar (``^`` and ``**`` both mean integer power)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom (('^' | '**') ['-'] INT | '(' ['-'] INT ')')?
    atom   := NUMBER | 'i' | 'z' | 'pi' | NAME | FUNC '(' expr ')' | '(' expr ')'

``z`` is the variable, ``i`` the imaginary unit, any other identifier a real
parameter.  :func:`to_string` prints floats with ``repr`` so that
``parse(to_string(e))`` evaluates bit-identically to ``e``.
"""
from __future__ import annotations

import math
import re

from . import expr as ex
from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> ex.Expr:
        e = self.expr()
        if self.peek()[0] is not None:
            raise ParseError(f"trailing input at {self.peek()[1]!r}")
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            e = ex.add(e, rhs) if op == "+" else ex.sub(e, rhs)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            e = ex.mul(e, rhs) if op == "*" else ex.div(e, rhs)
        return e

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return ex.neg(self.unary())
        return self.power()

    def _int(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, text = self.take()
        if kind != "num" or not text.isdigit():
            raise ParseError(f"exponent must be an integer literal, got {text!r}")
        return sign * int(text)

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            if self.peek()[1] == "(":
                self.take("(")
                n = self._int()
                self.take(")")
            else:
                n = self._int()
            try:
                return ex.power(base, n)
            except ValueError as err:
                raise ParseError(str(err)) from None
        return base

    def atom(self):
        kind, text = self.take()
        if kind == "num":
            return ex.const(float(text))
        if kind == "name":
            if text in ex.UNARY_FUNCS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return getattr(ex, text)(arg)
            if text == "z":
                return ex.Z
            if text == "i":
                return ex.I
            if text == "pi":
                return ex.const(math.pi)
            return ex.param(text)
        if text == "(":
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"unexpected token {text!r}")


def parse(text: str) -> ex.Expr:
    return _Parser(text).parse()


def _const_str(c: complex) -> str:
    re_, im = c.real, c.imag
    if im == 0 and not math.copysign(1.0, im) < 0:
        s = repr(re_)
        return f"({s})" if re_ < 0 or s.startswith("-") else s
    if re_ == 0 and math.copysign(1.0, re_) > 0:
        return f"({im!r}*i)"
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"({re_!r}{sign}{abs(im)!r}*i)"


def to_string(e: ex.Expr) -> str:
    k = e.kind
    if k == "const":
        return _const_str(e.value)
    if k == "z":
        return "z"
    if k == "param":
        return e.name
    if k in ex.UNARY_FUNCS:
        return f"{k}({to_string(e.args[0])})"
    prec = _PREC[k]

    def wrap(child, min_prec):
        s = to_string(child)
        return f"({s})" if child.kind in _PREC and _PREC[child.kind] < min_prec else s

    if k == "neg":
        return "-" + wrap(e.args[0], prec + 1)
    if k == "pow":
        n = e.exponent
        return f"{wrap(e.args[0], prec + 1)}^{n if n > 0 else f'({n})'}"
    sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[k]
    # parenthesize equal-precedence right operands so the tree shape, and hence
    # the floating-point evaluation order, survives a round trip
    return f"{wrap(e.args[0], prec)}{sym}{wrap(e.args[1], prec + 1)}"

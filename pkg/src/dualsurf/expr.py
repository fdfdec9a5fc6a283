"""Holomorphic expression trees with exact differentiation.

Expressions are immutable and compare node-for-node.  The smart constructors
(`add`, `mul`, ...) fold constants and drop neutral elements, nothing more;
there is deliberately no canonical-form simplifier.  Equality of functions is
decided by evaluation (see :func:`dualsurf.weierstrass.exprs_equal`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import DivisionByZero, UnboundParameter

Number = Union[int, float, complex]

UNARY_FUNCS = ("exp", "sin", "cos", "sinh", "cosh")
BINARY_OPS = ("add", "sub", "mul", "div")

_NUMPY_FUNCS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
}


@dataclass(frozen=True)
class Expr:
    kind: str
    args: tuple = ()
    value: complex | None = None
    name: str | None = None
    exponent: int | None = None

    # arithmetic sugar -------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return power(self, n)

    def __str__(self):
        from .grammar import to_string

        return to_string(self)

    def is_const(self, value=None) -> bool:
        if self.kind != "const":
            return False
        return value is None or self.value == value

    def parameters(self) -> set[str]:
        """Names of all parameters appearing in the tree."""
        if self.kind == "param":
            return {self.name}
        out: set[str] = set()
        for a in self.args:
            out |= a.parameters()
        return out

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)


def const(value: Number) -> Expr:
    return Expr("const", value=complex(value))


Z = Expr("z")
ZERO = const(0)
ONE = const(1)
I = const(1j)


def param(name: str) -> Expr:
    return Expr("param", name=name)


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return const(complex(x))
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


# smart constructors -------------------------------------------------------

def add(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if a.is_const(0):
        return b
    if b.is_const(0):
        return a
    if a.is_const() and b.is_const():
        return const(a.value + b.value)
    return Expr("add", (a, b))


def sub(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if b.is_const(0):
        return a
    if a.is_const(0):
        return neg(b)
    if a.is_const() and b.is_const():
        return const(a.value - b.value)
    return Expr("sub", (a, b))


def mul(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if a.is_const(0) or b.is_const(0):
        return ZERO
    if b.is_const() and not a.is_const():
        a, b = b, a
    if a.is_const(1):
        return b
    if a.is_const(-1) and not b.is_const():
        return neg(b)
    if a.is_const() and b.is_const():
        return const(a.value * b.value)
    if a.is_const() and b.kind == "mul" and b.args[0].is_const():
        return mul(const(a.value * b.args[0].value), b.args[1])
    if a.is_const() and b.kind == "neg":
        return mul(const(-a.value), b.args[0])
    return Expr("mul", (a, b))


def div(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if b.is_const(0):
        raise DivisionByZero("division by the constant zero", b)
    if b.is_const(1):
        return a
    if a.is_const(0):
        return ZERO
    if a.is_const() and b.is_const():
        return const(a.value / b.value)
    return Expr("div", (a, b))


def neg(a) -> Expr:
    a = as_expr(a)
    if a.is_const():
        return const(-a.value)
    if a.kind == "neg":
        return a.args[0]
    if a.kind == "mul" and a.args[0].is_const():
        return mul(const(-a.args[0].value), a.args[1])
    return Expr("neg", (a,))


def power(base, n: int) -> Expr:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"exponent must be a nonzero integer, got {n!r}")
    n = int(n)
    if n == 0:
        raise ValueError("exponent must be a nonzero integer, got 0")
    base = as_expr(base)
    if n == 1:
        return base
    if base.is_const():
        if base.value == 0 and n < 0:
            raise DivisionByZero("constant division by zero", base)
        return const(base.value ** n)
    return Expr("pow", (base,), exponent=n)


def _func(kind):
    def build(a) -> Expr:
        a = as_expr(a)
        if a.is_const():
            return const(_NUMPY_FUNCS[kind](a.value))
        return Expr(kind, (a,))

    build.__name__ = kind
    return build


exp = _func("exp")
sin = _func("sin")
cos = _func("cos")
sinh = _func("sinh")
cosh = _func("cosh")


# evaluation -------------------------------------------------------------

def evaluate(e: Expr, z, params: Mapping[str, float] | None = None):
    """Evaluate ``e`` at ``z`` (scalar or numpy array).

    Shared subtrees are evaluated once.  A zero denominator anywhere raises
    :class:`DivisionByZero` naming the offending subexpression.
    """
    params = params or {}
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    memo: dict[int, np.ndarray] = {}

    def rec(node: Expr):
        key = id(node)
        if key in memo:
            return memo[key]
        k = node.kind
        if k == "const":
            out = node.value
        elif k == "z":
            out = zz
        elif k == "param":
            if node.name not in params:
                raise UnboundParameter(node.name)
            out = complex(params[node.name])
        elif k == "add":
            out = rec(node.args[0]) + rec(node.args[1])
        elif k == "sub":
            out = rec(node.args[0]) - rec(node.args[1])
        elif k == "mul":
            out = rec(node.args[0]) * rec(node.args[1])
        elif k == "div":
            den = rec(node.args[1])
            if np.any(den == 0):
                raise DivisionByZero(f"pole of {node}", node)
            out = rec(node.args[0]) / den
        elif k == "neg":
            out = -rec(node.args[0])
        elif k == "pow":
            b = rec(node.args[0])
            n = node.exponent
            if n < 0:
                if np.any(b == 0):
                    raise DivisionByZero(f"pole of {node}", node)
                out = 1.0 / b ** (-n)
            else:
                out = b ** n
        elif k in _NUMPY_FUNCS:
            out = _NUMPY_FUNCS[k](rec(node.args[0]))
        else:  # pragma: no cover
            raise ValueError(f"unknown node kind {k!r}")
        memo[key] = out
        return out

    with np.errstate(over="ignore", invalid="ignore"):
        out = rec(e)
    out = np.broadcast_to(np.asarray(out, dtype=complex), zz.shape)
    return complex(out) if scalar else np.array(out)


# calculus ---------------------------------------------------------------

def differentiate(e: Expr) -> Expr:
    """Exact derivative with respect to ``z``."""
    k = e.kind
    if k in ("const", "param"):
        return ZERO
    if k == "z":
        return ONE
    if k == "add":
        return add(differentiate(e.args[0]), differentiate(e.args[1]))
    if k == "sub":
        return sub(differentiate(e.args[0]), differentiate(e.args[1]))
    if k == "neg":
        return neg(differentiate(e.args[0]))
    if k == "mul":
        a, b = e.args
        return add(mul(differentiate(a), b), mul(a, differentiate(b)))
    if k == "div":
        a, b = e.args
        num = sub(mul(differentiate(a), b), mul(a, differentiate(b)))
        return div(num, power(b, 2))
    if k == "pow":
        (b,) = e.args
        n = e.exponent
        inner = differentiate(b)
        if n == 2:
            return mul(const(2), mul(b, inner))
        return mul(const(n), mul(power(b, n - 1), inner))
    (a,) = e.args
    da = differentiate(a)
    if k == "exp":
        return mul(e, da)
    if k == "sin":
        return mul(cos(a), da)
    if k == "cos":
        return neg(mul(sin(a), da))
    if k == "sinh":
        return mul(cosh(a), da)
    if k == "cosh":
        return mul(sinh(a), da)
    raise ValueError(f"unknown node kind {k!r}")  # pragma: no cover


def _rebuild(node: Expr, args) -> Expr:
    k = node.kind
    if k == "add":
        return add(*args)
    if k == "sub":
        return sub(*args)
    if k == "mul":
        return mul(*args)
    if k == "div":
        return div(*args)
    if k == "neg":
        return neg(args[0])
    if k == "pow":
        return power(args[0], node.exponent)
    return _func(k)(args[0])


def compose(outer: Expr, inner: Expr) -> Expr:
    """Substitute ``inner`` for the variable ``z`` in ``outer``."""
    if outer.kind == "z":
        return inner
    if not outer.args:
        return outer
    return _rebuild(outer, [compose(a, inner) for a in outer.args])


def bind(e: Expr, params: Mapping[str, float]) -> Expr:
    """Replace bound parameters by constants (used before exporting)."""
    if e.kind == "param":
        return const(params[e.name]) if e.name in params else e
    if not e.args:
        return e
    return _rebuild(e, [bind(a, params) for a in e.args])

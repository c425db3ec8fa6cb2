"""Expression trees for structural equations and formula bodies.

Arithmetic is exact. Comparisons and the logical operators ``&``, ``|``,
``!`` yield 0 or 1 and treat any nonzero operand as true.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .values import ONE, ZERO, format_value


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "!"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Ite:
    cond: "Expr"
    then: "Expr"
    other: "Expr"


Expr = Union[Lit, Ref, Unary, Binary, Ite]

ARITH = ("+", "-", "*", "/")
COMPARE = ("=", "!=", "<", "<=", ">", ">=")
LOGIC = ("&", "|")

# binding strength used by the parser and the printer
PRECEDENCE = {"|": 1, "&": 2, "!": 3, "=": 4, "!=": 4, "<": 4, "<=": 4, ">": 4,
              ">=": 4, "+": 5, "-": 5, "*": 6, "/": 6}


class EvalError(ArithmeticError):
    pass


def _b(flag: bool) -> Fraction:
    return ONE if flag else ZERO


def eval_expr(e: Expr, env: Mapping[str, Fraction]) -> Fraction:
    """Evaluate ``e`` with variables bound by ``env``.

    Raises :class:`EvalError` for unbound variables and division by zero.
    """
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Ref):
        try:
            return env[e.name]
        except KeyError:
            raise EvalError(f"unbound variable {e.name}") from None
    if isinstance(e, Unary):
        v = eval_expr(e.operand, env)
        return -v if e.op == "-" else _b(v == 0)
    if isinstance(e, Ite):
        if eval_expr(e.cond, env) != 0:
            return eval_expr(e.then, env)
        return eval_expr(e.other, env)
    op = e.op
    # short-circuit logic still returns 0/1
    if op == "&":
        return _b(eval_expr(e.left, env) != 0 and eval_expr(e.right, env) != 0)
    if op == "|":
        return _b(eval_expr(e.left, env) != 0 or eval_expr(e.right, env) != 0)
    a = eval_expr(e.left, env)
    b = eval_expr(e.right, env)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise EvalError("division by zero")
        return a / b
    if op == "=":
        return _b(a == b)
    if op == "!=":
        return _b(a != b)
    if op == "<":
        return _b(a < b)
    if op == "<=":
        return _b(a <= b)
    if op == ">":
        return _b(a > b)
    if op == ">=":
        return _b(a >= b)
    raise ValueError(f"unknown operator {op!r}")


def references(e: Expr) -> list[str]:
    """Variable names referenced by ``e``, in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(x):
        if isinstance(x, Ref):
            seen.setdefault(x.name)
        elif isinstance(x, Unary):
            walk(x.operand)
        elif isinstance(x, Binary):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Ite):
            walk(x.cond)
            walk(x.then)
            walk(x.other)

    walk(e)
    return list(seen)


def compile_expr(e: Expr, slots: Mapping[str, int]) -> Callable[[tuple], Fraction]:
    """Turn ``e`` into a closure over a positional argument tuple.

    ``slots`` maps each referenced name to its position. Used to tabulate
    equations quickly; :func:`eval_expr` stays the reference interpreter.
    """
    if isinstance(e, Lit):
        v = e.value
        return lambda args: v
    if isinstance(e, Ref):
        i = slots[e.name]
        return lambda args: args[i]
    if isinstance(e, Unary):
        f = compile_expr(e.operand, slots)
        if e.op == "-":
            return lambda args: -f(args)
        return lambda args: ONE if f(args) == 0 else ZERO
    if isinstance(e, Ite):
        c = compile_expr(e.cond, slots)
        t = compile_expr(e.then, slots)
        o = compile_expr(e.other, slots)
        return lambda args: t(args) if c(args) != 0 else o(args)
    f = compile_expr(e.left, slots)
    g = compile_expr(e.right, slots)
    op = e.op
    if op == "&":
        return lambda args: ONE if (f(args) != 0 and g(args) != 0) else ZERO
    if op == "|":
        return lambda args: ONE if (f(args) != 0 or g(args) != 0) else ZERO
    if op == "+":
        return lambda args: f(args) + g(args)
    if op == "-":
        return lambda args: f(args) - g(args)
    if op == "*":
        return lambda args: f(args) * g(args)
    if op == "/":
        def div(args):
            d = g(args)
            if d == 0:
                raise EvalError("division by zero")
            return f(args) / d
        return div
    if op == "=":
        return lambda args: ONE if f(args) == g(args) else ZERO
    if op == "!=":
        return lambda args: ONE if f(args) != g(args) else ZERO
    if op == "<":
        return lambda args: ONE if f(args) < g(args) else ZERO
    if op == "<=":
        return lambda args: ONE if f(args) <= g(args) else ZERO
    if op == ">":
        return lambda args: ONE if f(args) > g(args) else ZERO
    if op == ">=":
        return lambda args: ONE if f(args) >= g(args) else ZERO
    raise ValueError(f"unknown operator {op!r}")


def format_expr(e: Expr) -> str:
    """Render ``e`` in DSL syntax, parenthesizing only where needed.

    The output re-parses to a structurally identical tree.
    """
    return _fmt(e, 0)


def _fmt(e: Expr, ctx: int) -> str:
    # ctx: minimum binding strength the surrounding syntax accepts without parens
    if isinstance(e, Lit):
        s = format_value(e.value)
        if e.value < 0 and ctx > 7:
            return f"({s})"
        return s
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Ite):
        return f"ite({_fmt(e.cond, 0)}, {_fmt(e.then, 0)}, {_fmt(e.other, 0)})"
    if isinstance(e, Unary):
        if e.op == "-":
            inner = e.operand
            # a bare literal after "-" would be folded into a negative literal
            if isinstance(inner, (Ref, Ite)):
                body = _fmt(inner, 8)
            else:
                body = f"({_fmt(inner, 0)})"
            s = "-" + body
            return f"({s})" if ctx > 7 else s
        body = _fmt(e.operand, 4)
        if isinstance(e.operand, Unary) and e.operand.op == "!":
            body = f"({_fmt(e.operand, 0)})"
        s = "!" + body
        return f"({s})" if ctx > 3 else s
    p = PRECEDENCE[e.op]
    if e.op in COMPARE:
        # comparisons do not chain
        s = f"{_fmt(e.left, 5)} {e.op} {_fmt(e.right, 5)}"
    else:
        s = f"{_fmt(e.left, p)} {e.op} {_fmt(e.right, p + 1)}"
    return f"({s})" if p < ctx else s

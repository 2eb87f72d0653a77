"""Parse arithmetic text such as ``-b*(b+c)/c`` or ``1/(1-omega^-1)`` into RatFuncs."""

from __future__ import annotations

import ast
from fractions import Fraction
from typing import Mapping

from .mpoly import PolyRing
from .ratfunc import RatFunc


def parse_rf(text: str, ring: PolyRing, symbols: Mapping[str, object] | None = None) -> RatFunc:
    """Evaluate ``text`` in the fraction field of ``ring``.

    Names resolve to ring variables, then to ``symbols`` (scalars or RatFuncs),
    then to the field generator name.  ``^`` is accepted as power.
    """
    syms = dict(symbols or {})
    if ring.field.degree > 1:
        syms.setdefault(ring.field.name, ring.field.gen())
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return RatFunc.const(ring, node.value)
        if isinstance(node, ast.Name):
            if node.id in ring.names:
                return RatFunc.var(ring, node.id)
            if node.id in syms:
                v = syms[node.id]
                return v if isinstance(v, RatFunc) else RatFunc.const(ring, v)
            raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = _int_exponent(node.right, text)
                return ev(node.left) ** exp
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def _int_exponent(node, text) -> int:
    sign = 1
    while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        if isinstance(node.op, ast.USub):
            sign = -sign
        node = node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return sign * node.value
    raise ValueError(f"exponent must be an integer in {text!r}")


def parse_scalar(text: str, field) -> object:
    """Parse a constant expression into a field element."""
    ring = PolyRing((), field)
    v = parse_rf(text, ring)
    return v.constant_value()


__all__ = ["parse_rf", "parse_scalar", "Fraction"]

"""Tiny arithmetic-expression language for catalog templates.

Templates such as ``"1-a*b"``, ``"c*(a*b-1)"`` or ``"(b-d)/b"`` are parsed with
:mod:`ast` and evaluated exactly in Z_D; division multiplies by the modular
inverse. Conditions (``"a == 1 and b == 1"``) use the same evaluator.
"""
from __future__ import annotations

import ast
from functools import lru_cache
from typing import Mapping

from .zmod import inv_int

_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
    ast.Compare, ast.Eq, ast.NotEq, ast.BoolOp, ast.And, ast.Or, ast.Not,
)


@lru_cache(maxsize=None)
def parse(text: str) -> ast.Expression:
    tree = ast.parse(text.strip(), mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"unsupported syntax {type(node).__name__} in {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ValueError(f"only integer literals allowed in {text!r}")
    return tree


def names(text: str) -> set[str]:
    return {n.id for n in ast.walk(parse(text)) if isinstance(n, ast.Name)}


def eval_mod(text: str, env: Mapping[str, int], D: int) -> int:
    """Evaluate ``text`` in Z_D; raises NotAUnit on division by a non-unit."""
    return _ev(parse(text).body, env, D) % D


def eval_cond(text: str, env: Mapping[str, int], D: int) -> bool:
    return bool(_ev(parse(text).body, env, D))


def _ev(node, env, D):
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        try:
            return env[node.id] % D
        except KeyError:
            raise KeyError(f"no value for parameter {node.id!r}") from None
    if isinstance(node, ast.UnaryOp):
        v = _ev(node.operand, env, D)
        if isinstance(node.op, ast.Not):
            return not v
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = _ev(node.left, env, D), _ev(node.right, env, D)
        if isinstance(node.op, ast.Add):
            return (left + right) % D
        if isinstance(node.op, ast.Sub):
            return (left - right) % D
        if isinstance(node.op, ast.Mult):
            return (left * right) % D
        if isinstance(node.op, ast.Div):
            return (left * inv_int(right, D)) % D
        if isinstance(node.op, ast.Pow):
            return pow(left, right, D)
    if isinstance(node, ast.Compare):
        left = _ev(node.left, env, D) % D
        for op, comp in zip(node.ops, node.comparators):
            right = _ev(comp, env, D) % D
            if isinstance(op, ast.Eq) and left != right:
                return False
            if isinstance(op, ast.NotEq) and left == right:
                return False
            left = right
        return True
    if isinstance(node, ast.BoolOp):
        vals = (_ev(v, env, D) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    raise ValueError(f"cannot evaluate {ast.dump(node)}")

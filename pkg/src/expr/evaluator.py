"""Generic evaluation and forward-mode gradients of expression ASTs."""

import math
from typing import Dict, Mapping, Optional, Sequence, Union

import numpy as np

from ..numkernel import cos, exp, gradient, log, power, real, sin, sqrt, tan
from ..utils.errors import UnboundVariableError
from .nodes import Ast, Binary, Call, Literal, Unary, Variable, free_variables
from .parser import parse

CONSTANTS = {'pi': math.pi}

_FUNCTIONS = {
    'sin': sin,
    'cos': cos,
    'tan': tan,
    'exp': exp,
    'log': log,
    'sqrt': sqrt,
}


def _divide(left, right):
    if real(right) == 0.0:
        numerator = real(left)
        return math.copysign(math.inf, numerator) if numerator != 0.0 else math.nan
    return left / right


def eval_expr(node: Ast, bindings: Mapping[str, object]):
    """Value of ``node``; bindings may hold floats or dual numbers."""
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Variable):
        if node.name in bindings:
            return bindings[node.name]
        if node.name in CONSTANTS:
            return CONSTANTS[node.name]
        raise UnboundVariableError(node.name)
    if isinstance(node, Unary):
        return -eval_expr(node.operand, bindings)
    if isinstance(node, Binary):
        left = eval_expr(node.left, bindings)
        right = eval_expr(node.right, bindings)
        if node.op == '+':
            return left + right
        if node.op == '-':
            return left - right
        if node.op == '*':
            return left * right
        if node.op == '/':
            return _divide(left, right)
        return power(left, right)
    if isinstance(node, Call):
        return _FUNCTIONS[node.func](eval_expr(node.arg, bindings))
    raise TypeError(f"Not an expression node: {node!r}")


def grad(node: Ast, wrt: Sequence[str], point: Sequence[float],
         bindings: Optional[Mapping[str, object]] = None) -> np.ndarray:
    """Gradient with respect to the ordered names ``wrt`` at ``point``."""
    fixed = dict(bindings or {})

    def func(values):
        return eval_expr(node, {**fixed, **dict(zip(wrt, values))})

    _, partials = gradient(func, list(point))
    return np.array([real(p) for p in partials], dtype=float)


class ExpressionFunction:
    """Parsed expression as a callable over an ordered list of variables.

    Parameters (e.g. the step size h) are bound once; every other free name
    must be one of ``variables`` or a built-in constant.
    """

    def __init__(self, source: Union[str, Ast], variables: Sequence[str],
                 parameters: Optional[Dict[str, float]] = None):
        self.node = parse(source) if isinstance(source, str) else source
        self.variables = list(variables)
        self.parameters = dict(parameters or {})
        known = set(self.variables) | set(self.parameters) | set(CONSTANTS)
        unbound = sorted(free_variables(self.node) - known)
        if unbound:
            raise UnboundVariableError(unbound[0])

    def __call__(self, values):
        values = list(values)
        if len(values) != len(self.variables):
            raise ValueError(f"Expected {len(self.variables)} values, got {len(values)}")
        return eval_expr(self.node, {**self.parameters, **dict(zip(self.variables, values))})

    def gradient(self, point: Sequence[float]) -> np.ndarray:
        return grad(self.node, self.variables, point, self.parameters)

    def __repr__(self):
        from .nodes import to_source
        return f"ExpressionFunction({to_source(self.node)!r}, {self.variables!r})"

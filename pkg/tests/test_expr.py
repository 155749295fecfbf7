"""Tests for the expression language: parsing, evaluation and gradients."""

import math

import numpy as np
import pytest

from src.expr import (
    Binary, Call, ExpressionFunction, Literal, Unary, Variable, eval_expr, free_variables, grad, parse,
    to_source, tokenize, TokenKind,
)
from src.utils.errors import ExprSyntaxError, UnboundVariableError


def value(src: str, **bindings) -> float:
    return eval_expr(parse(src), bindings)


def random_tree(rng, depth: int):
    """Random AST over x and y whose values stay moderate."""
    def leaf():
        if rng.random() < 0.6:
            return Variable(str(rng.choice(['x', 'y'])))
        return Literal(round(float(rng.uniform(-1.0, 1.0)), 3))

    if depth == 0 or rng.random() < 0.25:
        return leaf()
    kind = rng.integers(0, 7)
    if kind == 0:
        return Unary('-', random_tree(rng, depth - 1))
    if kind in (1, 2):
        return Binary('+' if kind == 1 else '-', random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 3:
        return Binary('*', leaf(), random_tree(rng, depth - 1))
    if kind == 4:
        below = random_tree(rng, depth - 1)
        return Binary('/', random_tree(rng, depth - 1),
                      Binary('+', Literal(2.0), Binary('*', below, below)))
    if kind == 5:
        return Call(str(rng.choice(['sin', 'cos'])), random_tree(rng, depth - 1))
    return Binary('^', leaf(), Literal(2.0)) if rng.random() < 0.5 else Call('exp', leaf())


class TestParser:
    def test_unary_minus_binds_looser_than_power(self):
        assert parse("-x^2") == Unary('-', Binary('^', Variable('x'), Literal(2.0)))
        assert value("-x^2", x=3.0) == -9.0

    def test_power_is_right_associative(self):
        assert value("2^3^2") == 512.0
        assert value("2^-1") == 0.5

    def test_left_associative_operators(self):
        assert value("1 - 2 - 3") == -4.0
        assert value("8 / 4 / 2") == 1.0

    def test_precedence(self):
        assert value("1 + 2 * 3") == 7.0
        assert value("(1 + 2) * 3") == 9.0

    def test_implicit_multiplication_is_rejected(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("2x")
        assert info.value.offset == 1

    def test_unclosed_parenthesis(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("(x")
        assert info.value.offset == 2
        assert ')' in info.value.expected

    def test_unknown_character(self):
        with pytest.raises(ExprSyntaxError) as info:
            parse("x $ y")
        assert info.value.offset == 2

    def test_empty_input(self):
        with pytest.raises(ExprSyntaxError):
            parse("")

    def test_function_names_are_tokens(self):
        kinds = [t.kind for t in tokenize("sin(x)")]
        assert kinds == [TokenKind.FUNC, TokenKind.LPAREN, TokenKind.IDENT, TokenKind.RPAREN, TokenKind.END]

    def test_printout_reparses_to_same_tree(self):
        for src in ("-x^2 + 3*y", "sin(x)/(1 + y^2)", "2^3^2 - -z", "1.5e-3 * exp(-t)"):
            node = parse(src)
            assert parse(to_source(node)) == node

    def test_free_variables(self):
        assert free_variables(parse("x*y + sin(z) + pi")) == {'x', 'y', 'z', 'pi'}


class TestEvaluation:
    def test_constants_and_functions(self):
        assert value("cos(pi)") == pytest.approx(-1.0)
        assert value("sqrt(16) + log(exp(2))") == pytest.approx(6.0)

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError) as info:
            value("x + y", x=1.0)
        assert info.value.name == 'y'

    def test_division_by_zero(self):
        assert value("1/0") == math.inf
        assert value("-1/0") == -math.inf
        assert math.isnan(value("0/0"))

    def test_gradient(self):
        g = grad(parse("x*y + sin(x)"), ['x', 'y'], [1.0, 2.0])
        np.testing.assert_allclose(g, [2.0 + math.cos(1.0), 1.0])

    def test_gradient_with_bound_parameter(self):
        g = grad(parse("a*x^2"), ['x'], [3.0], bindings={'a': 0.5})
        np.testing.assert_allclose(g, [3.0])

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        eps = 1e-6
        for _ in range(50):
            tree = random_tree(rng, 5)
            point = rng.uniform(-1.0, 1.0, size=2)
            ad = grad(tree, ['x', 'y'], point.tolist())
            for i, e in enumerate(np.eye(2)):
                up = eval_expr(tree, dict(zip('xy', (point + eps * e).tolist())))
                down = eval_expr(tree, dict(zip('xy', (point - eps * e).tolist())))
                fd = (up - down) / (2 * eps)
                assert abs(ad[i] - fd) <= 1e-6 * max(1.0, abs(fd)), to_source(tree)


class TestExpressionFunction:
    def test_call_and_gradient(self):
        f = ExpressionFunction("0.5*(q1 - q0)^2/h", ['q0', 'q1'], {'h': 0.1})
        assert f([0.0, 1.0]) == pytest.approx(5.0)
        np.testing.assert_allclose(f.gradient([0.0, 1.0]), [-10.0, 10.0])

    def test_unbound_name_rejected_at_construction(self):
        with pytest.raises(UnboundVariableError):
            ExpressionFunction("q0 + k", ['q0'])

    def test_wrong_arity(self):
        f = ExpressionFunction("x + y", ['x', 'y'])
        with pytest.raises(ValueError):
            f([1.0])

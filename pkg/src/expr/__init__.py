"""Expression language package initialization."""

from .lexer import Token, TokenKind, tokenize, FUNCTIONS
from .nodes import Ast, Literal, Variable, Unary, Binary, Call, free_variables, to_source
from .parser import Parser, parse
from .evaluator import eval_expr, grad, ExpressionFunction, CONSTANTS

__all__ = [
    'Token', 'TokenKind', 'tokenize', 'FUNCTIONS',
    'Ast', 'Literal', 'Variable', 'Unary', 'Binary', 'Call', 'free_variables', 'to_source',
    'Parser', 'parse',
    'eval_expr', 'grad', 'ExpressionFunction', 'CONSTANTS',
]

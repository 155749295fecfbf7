"""Precedence-climbing parser.

Binding power, loosest first: ``+ -`` (left), ``* /`` (left), unary minus,
``^`` (right). So ``-x^2`` is ``-(x^2)`` and ``2^-x`` is ``2^(-x)``. There is
no implicit multiplication: ``2x`` is a syntax error.
"""

from typing import List, Set

from ..utils.errors import ExprSyntaxError
from .lexer import Token, TokenKind, tokenize
from .nodes import Ast, Binary, Call, Literal, Unary, Variable

# Groups of increasing precedence
OPERATORS = [
    [("+", "left"), ("-", "left")],
    [("*", "left"), ("/", "left")],
    [("^", "right")],
]

OPERATOR_PREC = {name: idx for idx, group in enumerate(OPERATORS) for name, _ in group}
OPERATOR_ASSOC = {name: assoc for group in OPERATORS for name, assoc in group}

# operand of unary minus still absorbs '^' but nothing looser
UNARY_PREC = OPERATOR_PREC["^"]


class Parser:
    """Recursive precedence climbing over a token list."""

    def __init__(self, src: str):
        self.src = src
        self.tokens: List[Token] = tokenize(src)
        self.pos = 0
        self._expected: Set[str] = set()

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.token
        self.pos += 1
        self._expected = set()
        return token

    def check(self, kind: TokenKind, text: str = None) -> bool:
        self._expected.add(text if text is not None else kind.value)
        return self.token.kind is kind and (text is None or self.token.text == text)

    def fail(self, message: str):
        raise ExprSyntaxError(message, self.token.offset, self._expected)

    def expect(self, kind: TokenKind, text: str = None) -> Token:
        if not self.check(kind, text):
            found = self.token.text or self.token.kind.value
            self.fail(f"Unexpected {found!r}")
        return self.advance()

    def parse(self) -> Ast:
        node = self.expression(0)
        if not self.check(TokenKind.END):
            self.fail(f"Unexpected {self.token.text!r}")
        return node

    def expression(self, min_prec: int) -> Ast:
        lhs = self.prefix()
        while True:
            for name in OPERATOR_PREC:
                self.check(TokenKind.OP, name)
            token = self.token
            if token.kind is not TokenKind.OP or OPERATOR_PREC[token.text] < min_prec:
                return lhs
            self.advance()
            prec = OPERATOR_PREC[token.text]
            next_prec = prec + 1 if OPERATOR_ASSOC[token.text] == "left" else prec
            rhs = self.expression(next_prec)
            lhs = Binary(token.text, lhs, rhs, (lhs.span[0], rhs.span[1]))

    def prefix(self) -> Ast:
        start = self.token.offset
        if self.check(TokenKind.OP, "-"):
            self.advance()
            operand = self.expression(UNARY_PREC)
            return Unary("-", operand, (start, operand.span[1]))
        if self.check(TokenKind.NUMBER):
            token = self.advance()
            return Literal(float(token.text), (start, token.end))
        if self.check(TokenKind.IDENT):
            token = self.advance()
            return Variable(token.text, (start, token.end))
        if self.check(TokenKind.FUNC):
            func = self.advance()
            self.expect(TokenKind.LPAREN)
            arg = self.expression(0)
            close = self.expect(TokenKind.RPAREN)
            return Call(func.text, arg, (start, close.end))
        if self.check(TokenKind.LPAREN):
            self.advance()
            inner = self.expression(0)
            self.expect(TokenKind.RPAREN)
            return inner
        found = self.token.text or self.token.kind.value
        self.fail(f"Unexpected {found!r}")


def parse(src: str) -> Ast:
    """Parse source text into an AST; ExprSyntaxError on malformed input."""
    if not isinstance(src, str):
        raise ExprSyntaxError(f"Expression must be a string, got {type(src).__name__}", 0)
    return Parser(src).parse()

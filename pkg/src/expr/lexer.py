"""Tokenizer for the expression language."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List

from ..utils.errors import ExprSyntaxError

FUNCTIONS = ('sin', 'cos', 'tan', 'exp', 'log', 'sqrt')


class TokenKind(Enum):
    NUMBER = "number"
    IDENT = "identifier"
    FUNC = "function"
    OP = "operator"
    LPAREN = "("
    RPAREN = ")"
    END = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    offset: int

    @property
    def end(self) -> int:
        return self.offset + len(self.text)


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
""", re.VERBOSE)


def tokenize(src: str) -> List[Token]:
    """Split source text into tokens, ending with an END token."""
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExprSyntaxError(f"Unexpected character {src[pos]!r}", pos,
                                  ['number', 'identifier', 'operator', '(', ')'])
        kind = match.lastgroup
        text = match.group()
        if kind == 'number':
            tokens.append(Token(TokenKind.NUMBER, text, pos))
        elif kind == 'name':
            tokens.append(Token(TokenKind.FUNC if text in FUNCTIONS else TokenKind.IDENT, text, pos))
        elif kind == 'op':
            tokens.append(Token(TokenKind.OP, text, pos))
        elif kind == 'lparen':
            tokens.append(Token(TokenKind.LPAREN, text, pos))
        elif kind == 'rparen':
            tokens.append(Token(TokenKind.RPAREN, text, pos))
        pos = match.end()
    tokens.append(Token(TokenKind.END, "", len(src)))
    return tokens

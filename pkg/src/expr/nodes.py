"""Expression AST.

Nodes are immutable; ``span`` (start, end offsets into the source) is kept
for error reporting and ignored by equality, so a reparsed printout compares
equal to the original tree.
"""

from dataclasses import dataclass, field
from typing import Set, Tuple, Union

Span = Tuple[int, int]


@dataclass(frozen=True)
class Literal:
    value: float
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Variable:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Unary:
    op: str
    operand: 'Ast'
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Binary:
    op: str
    left: 'Ast'
    right: 'Ast'
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: 'Ast'
    span: Span = field(default=(0, 0), compare=False)


Ast = Union[Literal, Variable, Unary, Binary, Call]


def free_variables(node: Ast) -> Set[str]:
    if isinstance(node, Variable):
        return {node.name}
    if isinstance(node, Unary):
        return free_variables(node.operand)
    if isinstance(node, Binary):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Call):
        return free_variables(node.arg)
    return set()


def to_source(node: Ast) -> str:
    """Fully parenthesized source text; parse(to_source(a)) == a."""
    if isinstance(node, Literal):
        return repr(float(node.value))
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        return f"({node.op}{to_source(node.operand)})"
    if isinstance(node, Binary):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    raise TypeError(f"Not an expression node: {node!r}")

"""Pair groupoid R^n x R^n over R^n and its cotangent groupoid."""

from typing import List

import numpy as np

from ..numkernel import AffineMap
from .base import GroupoidRealization, pack


def _neg(values) -> list:
    return [-v for v in values]


class PairGroupoid(GroupoidRealization):
    """Elements (x, y); alpha = x, beta = y, (x, y)(y, z) = (x, z)."""

    is_affine = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Pair groupoid needs n >= 1, got {n}")
        self.n = n
        self.name = f"pair(R^{n})"
        self.element_dim = 2 * n
        self.base_dim = n

    def source(self, g):
        return pack(list(g)[:self.n])

    def target(self, g):
        return pack(list(g)[self.n:])

    def multiply(self, g, h):
        return pack(list(g)[:self.n] + list(h)[self.n:])

    def identity(self, x):
        x = list(x)
        return pack(x + x)

    def inverse(self, g):
        g = list(g)
        return pack(g[self.n:] + g[:self.n])

    @property
    def fiber_dim(self) -> int:
        return self.n

    def element_with_source(self, x, u):
        return pack(list(x) + list(u))

    def fiber_coordinates(self, g):
        return self.target(g)

    def default_successor_fiber(self, g):
        """Constant-velocity guess q2 = 2 q1 - q0."""
        g = list(g)
        return pack([2.0 * b - a for a, b in zip(g[:self.n], g[self.n:])])

    @property
    def source_map(self) -> AffineMap:
        return AffineMap.coordinate_projection(2 * self.n, range(self.n))

    @property
    def target_map(self) -> AffineMap:
        return AffineMap.coordinate_projection(2 * self.n, range(self.n, 2 * self.n))

    def cotangent(self) -> 'CotangentPairGroupoid':
        return CotangentPairGroupoid(self.n)

    @property
    def coordinate_names(self) -> List[str]:
        if self.n == 1:
            return ['q0', 'q1']
        return [f"{block}_{i + 1}" for block in ('q0', 'q1') for i in range(self.n)]

    def __repr__(self):
        return f"PairGroupoid({self.n})"


class CotangentPairGroupoid(GroupoidRealization):
    """T*(Q x Q) over T*Q with elements (q0, q1, p0, p1).

    alpha~ = (q0, -p0), beta~ = (q1, p1); two elements compose when the middle
    covectors cancel and the middle points agree.
    """

    is_affine = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Cotangent pair groupoid needs n >= 1, got {n}")
        self.n = n
        self.name = f"T*pair(R^{n})"
        self.element_dim = 4 * n
        self.base_dim = 2 * n

    def split(self, g):
        """(q0, q1, p0, p1) blocks of an element."""
        g = list(g)
        n = self.n
        return g[:n], g[n:2 * n], g[2 * n:3 * n], g[3 * n:]

    def source(self, g):
        q0, _, p0, _ = self.split(g)
        return pack(q0 + _neg(p0))

    def target(self, g):
        _, q1, _, p1 = self.split(g)
        return pack(q1 + p1)

    def multiply(self, g, h):
        q0, _, p0, _ = self.split(g)
        _, q2, _, p2 = self.split(h)
        return pack(q0 + q2 + p0 + p2)

    def identity(self, x):
        q, p = list(x)[:self.n], list(x)[self.n:]
        return pack(q + q + _neg(p) + p)

    def inverse(self, g):
        q0, q1, p0, p1 = self.split(g)
        return pack(q1 + q0 + _neg(p1) + _neg(p0))

    @property
    def fiber_dim(self) -> int:
        return 2 * self.n

    def element_with_source(self, x, u):
        q, p = list(x)[:self.n], list(x)[self.n:]
        q1, p1 = list(u)[:self.n], list(u)[self.n:]
        return pack(q + q1 + _neg(p) + p1)

    def fiber_coordinates(self, g):
        return self.target(g)

    @property
    def source_map(self) -> AffineMap:
        n = self.n
        A = np.zeros((2 * n, 4 * n))
        A[:n, :n] = np.eye(n)
        A[n:, 2 * n:3 * n] = -np.eye(n)
        return AffineMap.linear(A)

    @property
    def target_map(self) -> AffineMap:
        return AffineMap.coordinate_projection(4 * self.n, [self.n + i for i in range(self.n)]
                                               + [3 * self.n + i for i in range(self.n)])

    @property
    def coordinate_names(self) -> List[str]:
        if self.n == 1:
            return ['q0', 'q1', 'p0', 'p1']
        blocks = ('q0', 'q1', 'p0', 'p1')
        return [f"{block}_{i + 1}" for block in blocks for i in range(self.n)]

    def __repr__(self):
        return f"CotangentPairGroupoid({self.n})"

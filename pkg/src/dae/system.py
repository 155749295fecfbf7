"""Linear time-dependent DAEs A(t) x' + B(t) x = b(t) and left annihilators."""

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from ..expr import ExpressionFunction
from ..numkernel import TolerancePolicy, DEFAULT_TOLERANCES, as_matrix, as_vector, pseudo_inverse, rank_factor
from ..utils.errors import DimensionMismatchError, NonFiniteError

Entry = Union[float, int, str]


def _entry_function(entry: Entry) -> Callable[[float], float]:
    if isinstance(entry, str):
        expression = ExpressionFunction(entry, ['t'])
        return lambda t: float(expression([t]))
    value = float(entry)
    return lambda t: value


def _matrix_function(rows: Sequence[Sequence[Entry]], n: int, what: str) -> Callable[[float], np.ndarray]:
    if len(rows) != n or any(len(row) != n for row in rows):
        raise DimensionMismatchError(f"{what} must be {n}x{n}")
    entries = [[_entry_function(e) for e in row] for row in rows]
    return lambda t: np.array([[f(t) for f in row] for row in entries], dtype=float)


def _vector_function(values: Sequence[Entry], n: int, what: str) -> Callable[[float], np.ndarray]:
    if len(values) != n:
        raise DimensionMismatchError(f"{what} must have {n} entries")
    entries = [_entry_function(e) for e in values]
    return lambda t: np.array([f(t) for f in entries], dtype=float)


@dataclass
class LinearDAE:
    """A(t) x' + B(t) x = b(t), sampled at t_k = t0 + k h."""

    n: int
    A: Callable[[float], np.ndarray]
    B: Callable[[float], np.ndarray]
    b: Callable[[float], np.ndarray]
    t0: float = 0.0
    h: float = 0.1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"DAE dimension must be >= 1, got {self.n}")
        if not self.h > 0:
            raise ValueError(f"Step size must be positive, got {self.h}")

    @classmethod
    def from_entries(cls, A: Sequence[Sequence[Entry]], B: Sequence[Sequence[Entry]],
                     b: Sequence[Entry], t0: float = 0.0, h: float = 0.1) -> 'LinearDAE':
        """Build from nested lists whose entries are numbers or expressions in t."""
        n = len(b)
        return cls(n, _matrix_function(A, n, "A"), _matrix_function(B, n, "B"),
                   _vector_function(b, n, "b"), float(t0), float(h))

    @classmethod
    def constant(cls, A, B, b, t0: float = 0.0, h: float = 0.1) -> 'LinearDAE':
        A, B = as_matrix(A), as_matrix(B)
        b = as_vector(b, A.shape[0])
        return cls(A.shape[0], lambda t: A, lambda t: B, lambda t: b, t0, h)

    def time(self, k: int) -> float:
        return self.t0 + k * self.h

    def _checked(self, value: np.ndarray, what: str, k: int) -> np.ndarray:
        if not np.all(np.isfinite(value)):
            raise NonFiniteError(f"{what}(t_{k}) is not finite")
        return value

    def A_at(self, k: int) -> np.ndarray:
        return self._checked(as_matrix(self.A(self.time(k)), self.n, self.n), "A", k)

    def B_at(self, k: int) -> np.ndarray:
        return self._checked(as_matrix(self.B(self.time(k)), self.n, self.n), "B", k)

    def b_at(self, k: int) -> np.ndarray:
        return self._checked(as_vector(self.b(self.time(k)), self.n), "b", k)


def left_annihilator(A, kind: str = 'projector', tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """n x n matrix Q with Q A = 0 and ker Q = im A.

    Args:
        A: square matrix
        kind: 'projector' for I - A A^+, 'basis' for an orthonormal row basis
            of the left null space below rank(A) zero rows
        tol: rank policy

    Returns:
        Q as an n x n array.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatchError(f"left_annihilator needs a square matrix, got {A.shape}")
    if kind == 'projector':
        return np.eye(n) - A @ pseudo_inverse(A, tol)
    if kind == 'basis':
        rows = rank_factor(A, tol).left_null_space
        # algebraic rows of a semi-explicit system come last
        return np.vstack([np.zeros((n - rows.shape[0], n)), rows])
    raise ValueError(f"Unknown annihilator kind: {kind}")

"""Dense small-matrix linear algebra with relative rank tolerances."""

from typing import NamedTuple, Optional

import numpy as np

from .tolerance import TolerancePolicy, DEFAULT_TOLERANCES
from ..utils.errors import NonFiniteError


def as_matrix(data, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """Validated finite 2-D float array."""
    M = np.array(data, dtype=float)
    if M.ndim == 1 and cols is not None and M.size == 0:
        M = M.reshape(0, cols)
    if M.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFiniteError("Matrix has non-finite entries")
    if rows is not None and M.shape[0] != rows:
        raise ValueError(f"Expected {rows} rows, got {M.shape[0]}")
    if cols is not None and M.shape[1] != cols:
        raise ValueError(f"Expected {cols} columns, got {M.shape[1]}")
    return M


def as_vector(data, size: Optional[int] = None) -> np.ndarray:
    """Validated finite 1-D float array."""
    v = np.array(data, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise NonFiniteError("Vector has non-finite entries")
    if size is not None and v.size != size:
        raise ValueError(f"Expected a vector of length {size}, got {v.size}")
    return v


class RankFactorization(NamedTuple):
    """Orthonormal bases of the four fundamental subspaces of M (r x n).

    row_space: rank x n (rows), null_space: n x (n - rank) (columns),
    left_null_space: (r - rank) x r (rows).
    """
    rank: int
    row_space: np.ndarray
    null_space: np.ndarray
    left_null_space: np.ndarray
    singular_values: np.ndarray
    column_space: np.ndarray


def rank_factor(M, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> RankFactorization:
    """SVD-based rank decision relative to the largest singular value."""
    M = as_matrix(M)
    r, n = M.shape
    if r == 0 or n == 0:
        return RankFactorization(
            rank=0,
            row_space=np.zeros((0, n)),
            null_space=np.eye(n),
            left_null_space=np.eye(r),
            singular_values=np.zeros(0),
            column_space=np.zeros((r, 0)),
        )
    U, S, Vt = np.linalg.svd(M, full_matrices=True)
    sigma_max = S[0] if S.size else 0.0
    rank = int(np.sum(S >= tol.rank_rel_tol * sigma_max)) if sigma_max > 0 else 0
    return RankFactorization(
        rank=rank,
        row_space=Vt[:rank].copy(),
        null_space=Vt[rank:].T.copy(),
        left_null_space=U[:, rank:].T.copy(),
        singular_values=S,
        column_space=U[:, :rank].copy(),
    )


def pseudo_inverse(M, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """Moore-Penrose inverse with the policy's rank cutoff."""
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros((M.shape[1], M.shape[0]))
    U, S, Vt = np.linalg.svd(M, full_matrices=False)
    cutoff = tol.rank_rel_tol * S[0] if S.size and S[0] > 0 else np.inf
    inv = np.array([1.0 / s if s >= cutoff else 0.0 for s in S])
    return (Vt.T * inv) @ U.T


def smallest_singular_value(M) -> float:
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.svd(M, compute_uv=False)[-1])


def solve_small(A, b):
    """Gaussian elimination with partial pivoting, generic over dual numbers.

    ``A`` is a list of rows, ``b`` a list; pivots are chosen on real values.
    """
    from .dual import real
    n = len(b)
    rows = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(real(rows[r][col])))
        if real(rows[pivot][col]) == 0:
            raise np.linalg.LinAlgError("Singular matrix in solve_small")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(col + 1, n):
            factor = rows[r][col] / rows[col][col]
            rows[r] = [a - factor * p for a, p in zip(rows[r], rows[col])]
    x = [0.0] * n
    for r in reversed(range(n)):
        acc = rows[r][n]
        for c in range(r + 1, n):
            acc = acc - rows[r][c] * x[c]
        x[r] = acc / rows[r][r]
    return x

"""Affine subspaces {x : Mx = c} with exact set calculus.

Each subspace keeps the implicit (constraint) form in canonical shape, i.e.
orthonormal constraint rows, and derives the generator form (base point plus
orthonormal direction basis) on demand. Images are computed in generator form,
preimages and intersections in implicit form. EMPTY is an ordinary value.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence

import numpy as np

from .linalg import as_matrix, as_vector, rank_factor
from .tolerance import TolerancePolicy, DEFAULT_TOLERANCES
from ..utils.errors import DimensionMismatchError, InconsistentError


@dataclass(frozen=True, eq=False)
class AffineMap:
    """x -> A x + t."""

    matrix: np.ndarray
    offset: np.ndarray

    @classmethod
    def linear(cls, matrix) -> 'AffineMap':
        A = as_matrix(matrix)
        return cls(A, np.zeros(A.shape[0]))

    @classmethod
    def create(cls, matrix, offset=None) -> 'AffineMap':
        A = as_matrix(matrix)
        t = np.zeros(A.shape[0]) if offset is None else as_vector(offset, A.shape[0])
        return cls(A, t)

    @classmethod
    def coordinate_projection(cls, ambient_dim: int, indices: Sequence[int]) -> 'AffineMap':
        """Selects the listed coordinates of R^ambient_dim."""
        A = np.zeros((len(indices), ambient_dim))
        for row, index in enumerate(indices):
            A[row, index] = 1.0
        return cls(A, np.zeros(len(indices)))

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ as_vector(x, self.domain_dim) + self.offset

    def compose(self, inner: 'AffineMap') -> 'AffineMap':
        """self after inner."""
        if inner.codomain_dim != self.domain_dim:
            raise DimensionMismatchError("Cannot compose affine maps of incompatible dimensions")
        return AffineMap(self.matrix @ inner.matrix, self.matrix @ inner.offset + self.offset)


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """Solution set of M x = c in R^ambient_dim, or EMPTY."""

    ambient_dim: int
    constraint_matrix: np.ndarray
    offset: np.ndarray
    is_empty: bool = False
    tol: TolerancePolicy = field(default=DEFAULT_TOLERANCES, repr=False)

    # Constructors

    @classmethod
    def full(cls, ambient_dim: int, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'AffineSubspace':
        return cls(ambient_dim, np.zeros((0, ambient_dim)), np.zeros(0), False, tol)

    @classmethod
    def empty(cls, ambient_dim: int, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'AffineSubspace':
        return cls(ambient_dim, np.zeros((0, ambient_dim)), np.zeros(0), True, tol)

    @classmethod
    def point(cls, p, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'AffineSubspace':
        p = as_vector(p)
        return cls.from_constraints(np.eye(p.size), p, tol)

    @classmethod
    def from_constraints(cls, M, c, tol: TolerancePolicy = DEFAULT_TOLERANCES,
                         ambient_dim: Optional[int] = None) -> 'AffineSubspace':
        """Canonicalize M x = c: orthonormal rows, EMPTY when inconsistent."""
        M = as_matrix(M, cols=ambient_dim)
        n = M.shape[1] if ambient_dim is None else ambient_dim
        c = as_vector(c, M.shape[0])
        if M.shape[0] == 0:
            return cls.full(n, tol)

        norms = np.linalg.norm(M, axis=1)
        scale = norms.max()
        nonzero = norms > tol.rank_rel_tol * scale if scale > 0 else np.zeros_like(norms, dtype=bool)
        if np.any(np.abs(c[~nonzero]) > tol.set_eq_tol):
            return cls.empty(n, tol)
        if not np.any(nonzero):
            return cls.full(n, tol)

        M_hat = M[nonzero] / norms[nonzero, None]
        c_hat = c[nonzero] / norms[nonzero]
        U, S, Vt = np.linalg.svd(M_hat, full_matrices=True)
        rank = int(np.sum(S >= tol.rank_rel_tol * S[0]))
        residual = U[:, rank:].T @ c_hat
        if residual.size and np.max(np.abs(residual)) > tol.set_eq_tol * max(1.0, np.max(np.abs(c_hat))):
            return cls.empty(n, tol)
        M_canon = Vt[:rank].copy()
        c_canon = (U[:, :rank].T @ c_hat) / S[:rank]
        return cls(n, M_canon, c_canon, False, tol)

    @classmethod
    def from_generators(cls, base_point, directions, tol: TolerancePolicy = DEFAULT_TOLERANCES
                        ) -> 'AffineSubspace':
        """{p + D z}; D columns need not be independent."""
        p = as_vector(base_point)
        D = as_matrix(directions, rows=p.size) if np.size(directions) else np.zeros((p.size, 0))
        if D.shape[1] == 0:
            return cls.from_constraints(np.eye(p.size), p, tol)
        normals = rank_factor(D, tol).left_null_space
        if normals.shape[0] == 0:
            return cls.full(p.size, tol)
        return cls.from_constraints(normals, normals @ p, tol)

    # Derived data

    @property
    def rank(self) -> int:
        return self.constraint_matrix.shape[0]

    @property
    def dim(self) -> int:
        """Dimension of the set; -1 for EMPTY."""
        return -1 if self.is_empty else self.ambient_dim - self.rank

    @cached_property
    def base_point(self) -> np.ndarray:
        if self.is_empty:
            raise InconsistentError("EMPTY subspace has no base point")
        return self.constraint_matrix.T @ self.offset if self.rank else np.zeros(self.ambient_dim)

    @cached_property
    def directions(self) -> np.ndarray:
        """Orthonormal basis of the direction space, as columns."""
        if self.is_empty:
            return np.zeros((self.ambient_dim, 0))
        if self.rank == 0:
            return np.eye(self.ambient_dim)
        return rank_factor(self.constraint_matrix, self.tol).null_space

    def residual(self, x) -> float:
        """Infinity-norm constraint violation of x."""
        x = as_vector(x, self.ambient_dim)
        if self.is_empty:
            return np.inf
        if self.rank == 0:
            return 0.0
        return float(np.max(np.abs(self.constraint_matrix @ x - self.offset)))

    def contains(self, x) -> bool:
        return self.residual(x) < self.tol.set_eq_tol

    def project(self, x) -> np.ndarray:
        """Least-squares (orthogonal) projection onto the set."""
        if self.is_empty:
            raise InconsistentError("Cannot project onto an EMPTY set")
        x = as_vector(x, self.ambient_dim)
        if self.rank == 0:
            return x
        M = self.constraint_matrix
        return x - M.T @ (M @ x - self.offset)

    def sample(self, rng: np.random.Generator, count: int = 1, scale: float = 1.0) -> np.ndarray:
        """Random points p + D z with z uniform in [-scale, scale]."""
        if self.is_empty:
            return np.zeros((0, self.ambient_dim))
        D = self.directions
        z = rng.uniform(-scale, scale, size=(count, D.shape[1]))
        return self.base_point[None, :] + z @ D.T

    def to_text(self, names: Optional[List[str]] = None) -> List[str]:
        """One line per canonical constraint."""
        if self.is_empty:
            return ["EMPTY"]
        if self.rank == 0:
            return [f"R^{self.ambient_dim}"]
        names = names or [f"z{i + 1}" for i in range(self.ambient_dim)]
        lines = []
        for row, rhs in zip(self.constraint_matrix, self.offset):
            terms = [f"{coef:+.6g}*{name}" for coef, name in zip(row, names) if abs(coef) > 1e-12]
            lines.append(f"{' '.join(terms)} = {rhs:.6g}")
        return lines


# Set calculus

def _check_same_dim(S1: AffineSubspace, S2: AffineSubspace):
    if S1.ambient_dim != S2.ambient_dim:
        raise DimensionMismatchError(
            f"Ambient dimensions differ: {S1.ambient_dim} vs {S2.ambient_dim}")


def affine_intersect(S1: AffineSubspace, S2: AffineSubspace) -> AffineSubspace:
    _check_same_dim(S1, S2)
    if S1.is_empty or S2.is_empty:
        return AffineSubspace.empty(S1.ambient_dim, S1.tol)
    M = np.vstack([S1.constraint_matrix, S2.constraint_matrix])
    c = np.concatenate([S1.offset, S2.offset])
    return AffineSubspace.from_constraints(M, c, S1.tol, ambient_dim=S1.ambient_dim)


def affine_image(S: AffineSubspace, T: AffineMap) -> AffineSubspace:
    if T.domain_dim != S.ambient_dim:
        raise DimensionMismatchError(
            f"Map expects dimension {T.domain_dim}, subspace lives in {S.ambient_dim}")
    if S.is_empty:
        return AffineSubspace.empty(T.codomain_dim, S.tol)
    return AffineSubspace.from_generators(T.matrix @ S.base_point + T.offset,
                                          T.matrix @ S.directions, S.tol)


def affine_preimage(S: AffineSubspace, T: AffineMap) -> AffineSubspace:
    if T.codomain_dim != S.ambient_dim:
        raise DimensionMismatchError(
            f"Map lands in dimension {T.codomain_dim}, subspace lives in {S.ambient_dim}")
    if S.is_empty:
        return AffineSubspace.empty(T.domain_dim, S.tol)
    M = S.constraint_matrix
    return AffineSubspace.from_constraints(M @ T.matrix, S.offset - M @ T.offset, S.tol,
                                           ambient_dim=T.domain_dim)


def affine_equal(S1: AffineSubspace, S2: AffineSubspace,
                 tol: Optional[TolerancePolicy] = None) -> bool:
    """Set equality: same dimension, mutual base points, same direction space."""
    _check_same_dim(S1, S2)
    tol = tol or S1.tol
    if S1.is_empty or S2.is_empty:
        return S1.is_empty and S2.is_empty
    if S1.dim != S2.dim:
        return False
    if S1.residual(S2.base_point) >= tol.set_eq_tol or S2.residual(S1.base_point) >= tol.set_eq_tol:
        return False
    P1 = S1.constraint_matrix.T @ S1.constraint_matrix
    P2 = S2.constraint_matrix.T @ S2.constraint_matrix
    # spectral norm of the projector difference = sine of the largest principal angle
    gap = np.linalg.norm(P1 - P2, 2) if P1.size else 0.0
    return bool(gap < tol.set_eq_tol)


def affine_is_subset(S1: AffineSubspace, S2: AffineSubspace,
                     tol: Optional[TolerancePolicy] = None) -> bool:
    """S1 included in S2."""
    _check_same_dim(S1, S2)
    tol = tol or S1.tol
    if S1.is_empty:
        return True
    if S2.is_empty:
        return False
    if S2.residual(S1.base_point) >= tol.set_eq_tol:
        return False
    if S2.rank == 0 or S1.directions.shape[1] == 0:
        return True
    return bool(np.max(np.abs(S2.constraint_matrix @ S1.directions)) < tol.set_eq_tol)

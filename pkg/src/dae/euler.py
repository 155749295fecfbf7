"""Constrained explicit Euler scheme for linear DAEs.

The explicit Euler equations A_k (x_{k+1} - x_k)/h + B_k x_k = b_k only fix
x_{k+1} along im A_k. The hidden constraint Q_{k+1} B_{k+1} x = Q_{k+1} b_{k+1}
fixes the rest, and for index-1 problems the combined system

    (A_k + Q_{k+1} B_{k+1}) x_{k+1} = (A_k - h B_k) x_k + h b_k + Q_{k+1} b_{k+1}

is regular.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..dynamics import EquationSequence, ImplicitEquation
from ..groupoid import PairGroupoid
from ..numkernel import (
    AffineSubspace, TolerancePolicy, DEFAULT_TOLERANCES, as_vector, pseudo_inverse, rank_factor,
)
from ..utils.errors import HigherIndexError, InconsistentError, NonFiniteError
from .system import LinearDAE, left_annihilator


def constraint_set(dae: LinearDAE, k: int, kind: str = 'projector',
                   tol: TolerancePolicy = DEFAULT_TOLERANCES) -> AffineSubspace:
    """{x : Q_k B_k x = Q_k b_k}; the full space when Q_k = 0."""
    Q = left_annihilator(dae.A_at(k), kind, tol)
    return AffineSubspace.from_constraints(Q @ dae.B_at(k), Q @ dae.b_at(k), tol, ambient_dim=dae.n)


@dataclass
class DAEStepReport:
    """One constrained Euler step k -> k + 1."""

    k: int
    t: float
    Q: np.ndarray
    constraint: AffineSubspace
    regular: bool
    rank: int
    smallest_singular_value: float
    x_next: Optional[np.ndarray] = None
    equation_residual: float = float('nan')
    constraint_residual: float = float('nan')

    def require(self) -> np.ndarray:
        """x_{k+1}, or HigherIndexError when the combined matrix was singular."""
        if not self.regular:
            raise HigherIndexError(
                f"A_{self.k} + Q_{self.k + 1} B_{self.k + 1} is singular "
                f"(rank {self.rank} of {self.Q.shape[0]})", self.rank, self.Q.shape[0])
        return self.x_next

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            't': self.t,
            'regular': self.regular,
            'rank': self.rank,
            'smallest_singular_value': self.smallest_singular_value,
            'equation_residual': self.equation_residual,
            'constraint_residual': self.constraint_residual,
        }


def euler_step(dae: LinearDAE, k: int, x_k, kind: str = 'projector',
               tol: TolerancePolicy = DEFAULT_TOLERANCES) -> DAEStepReport:
    """Solve the combined index-1 system for x_{k+1}.

    A singular combined matrix is reported (``regular`` False) rather than raised;
    call ``report.require()`` to turn it into HigherIndexError.
    """
    x_k = as_vector(x_k, dae.n)
    if not np.all(np.isfinite(x_k)):
        raise NonFiniteError(f"x_{k} is not finite")
    h = dae.h
    A_k, B_k, b_k = dae.A_at(k), dae.B_at(k), dae.b_at(k)
    B_next, b_next = dae.B_at(k + 1), dae.b_at(k + 1)
    Q_k = left_annihilator(A_k, kind, tol)
    Q_next = left_annihilator(dae.A_at(k + 1), kind, tol)

    combined = A_k + Q_next @ B_next
    factor = rank_factor(combined, tol)
    smallest = float(factor.singular_values[-1])
    report = DAEStepReport(
        k=k, t=dae.time(k), Q=Q_k,
        constraint=AffineSubspace.from_constraints(Q_k @ B_k, Q_k @ b_k, tol, ambient_dim=dae.n),
        regular=factor.rank == dae.n, rank=factor.rank, smallest_singular_value=smallest,
    )
    if not report.regular:
        return report

    rhs = (A_k - h * B_k) @ x_k + h * b_k + Q_next @ b_next
    x_next = np.linalg.solve(combined, rhs)
    report.x_next = x_next
    # the difference equation only holds along im A_k
    P = A_k @ pseudo_inverse(A_k, tol)
    report.equation_residual = float(np.max(np.abs(P @ (A_k @ (x_next - x_k) / h + B_k @ x_k - b_k))))
    report.constraint_residual = float(np.max(np.abs(Q_next @ (B_next @ x_next - b_next))))
    return report


def consistent_initialize(dae: LinearDAE, x_guess, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """Least-squares projection of x_guess onto the t0 constraint set."""
    C0 = constraint_set(dae, 0, tol=tol)
    if C0.is_empty:
        raise InconsistentError(f"The DAE has no consistent state at t0 = {dae.t0}")
    return C0.project(as_vector(x_guess, dae.n))


@dataclass
class DAEIntegration:
    """Trajectory x_0..x_m and the step reports that produced it."""

    dae: LinearDAE
    trajectory: List[np.ndarray] = field(default_factory=list)
    reports: List[DAEStepReport] = field(default_factory=list)

    @property
    def higher_index(self) -> bool:
        return bool(self.reports) and not self.reports[-1].regular

    @property
    def times(self) -> List[float]:
        return [self.dae.time(k) for k in range(len(self.trajectory))]

    def require_complete(self) -> 'DAEIntegration':
        if self.higher_index:
            self.reports[-1].require()
        return self

    def constraint_residuals(self, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> List[float]:
        return [constraint_set(self.dae, k, tol=tol).residual(x) for k, x in enumerate(self.trajectory)]


def integrate(dae: LinearDAE, x_guess, N: int, kind: str = 'projector',
              tol: TolerancePolicy = DEFAULT_TOLERANCES) -> DAEIntegration:
    """consistent_initialize, then N Euler steps; stops at the first HIGHER_INDEX step."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    result = DAEIntegration(dae, [consistent_initialize(dae, x_guess, tol)])
    for k in range(N):
        report = euler_step(dae, k, result.trajectory[-1], kind, tol)
        result.reports.append(report)
        if not report.regular:
            break
        result.trajectory.append(report.x_next)
    return result


def as_sequence(dae: LinearDAE, N: int, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> EquationSequence:
    """E_k = {(x, y) : (B_k - A_k/h) x + (A_k/h) y = b_k} on pair(R^n), k = 0..N-1."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    pair = PairGroupoid(dae.n)

    def family(k: int) -> ImplicitEquation:
        if not 0 <= k < N:
            raise IndexError(f"Equation index {k} outside [0, {N})")
        A_h = dae.A_at(k) / dae.h
        rows = np.hstack([dae.B_at(k) - A_h, A_h])
        return ImplicitEquation.from_constraints(pair, rows, dae.b_at(k), name="E", tol=tol)
    return EquationSequence(pair, family)

"""Damped Gauss-Newton root finder for small dense systems."""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dual import evaluate, jacobian
from .linalg import as_vector
from .tolerance import TolerancePolicy, DEFAULT_TOLERANCES
from ..utils.errors import ConvergenceError, DomainError

MIN_STEP = 1.0 / 1024.0

_EVAL_ERRORS = (DomainError, ZeroDivisionError, OverflowError, ValueError)


@dataclass
class NewtonResult:
    """Outcome of a Gauss-Newton solve; ``converged`` False means FAILURE."""

    x: np.ndarray
    converged: bool
    residual_norm: float
    iterations: int

    def require(self, message: str = "Gauss-Newton did not converge") -> np.ndarray:
        if not self.converged:
            raise ConvergenceError(message, self.residual_norm)
        return self.x


def _safe_evaluate(func: Callable, x: np.ndarray) -> np.ndarray:
    try:
        F = evaluate(func, x)
    except _EVAL_ERRORS:
        return None
    return F if np.all(np.isfinite(F)) else None


def gauss_newton(func: Callable, x0: Sequence[float],
                 tol: TolerancePolicy = DEFAULT_TOLERANCES) -> NewtonResult:
    """Solve F(x) = 0 (least squares if over/under-determined).

    Steps are pseudo-inverse Gauss-Newton steps with halving line search on
    ||F||_2. Success means ||F(x)||_inf < newton_tol.
    """
    x = as_vector(x0)
    residual = np.inf
    for iteration in range(tol.newton_max_iter + 1):
        try:
            F, J = jacobian(func, x)
        except _EVAL_ERRORS:
            return NewtonResult(x, False, residual, iteration)
        if not (np.all(np.isfinite(F)) and np.all(np.isfinite(J))):
            return NewtonResult(x, False, residual, iteration)
        residual = float(np.max(np.abs(F))) if F.size else 0.0
        if residual < tol.newton_tol:
            return NewtonResult(x, True, residual, iteration)
        if iteration == tol.newton_max_iter:
            break

        delta = np.linalg.lstsq(J, -F, rcond=tol.rank_rel_tol)[0]
        if not np.all(np.isfinite(delta)) or not np.any(delta):
            break

        merit = float(F @ F)
        step = 1.0
        while step >= MIN_STEP:
            trial = x + step * delta
            F_trial = _safe_evaluate(func, trial)
            if F_trial is not None and float(F_trial @ F_trial) < merit:
                break
            step /= 2.0
        else:
            # stalled: no decrease along the Gauss-Newton direction
            break
        x = trial

    return NewtonResult(x, False, residual, iteration)

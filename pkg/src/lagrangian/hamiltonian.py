"""Hamiltonian vector fields, their flows, and flow-generated Lagrangian sets.

For H on T*Q = R^2n with canonical coordinates z = (q, p), X_H = Omega grad H
with Omega = [[0, I], [-I, 0]]. The flow is integrated with the classical
fourth-order Runge-Kutta scheme.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..expr import ExpressionFunction
from ..numkernel import as_vector, gradient, real
from ..utils.config import Config


def canonical_symplectic(n: int) -> np.ndarray:
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


@dataclass
class HamiltonianSystem:
    """Hamiltonian H(q, p) on R^2n."""

    H: Callable
    n: int = 1
    name: str = "H"
    omega: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Configuration dimension must be >= 1, got {self.n}")
        self.omega = canonical_symplectic(self.n)

    @classmethod
    def from_expression(cls, source: str, n: int = 1,
                        parameters: Optional[Dict[str, float]] = None) -> 'HamiltonianSystem':
        """Variables are q, p for n = 1 and q1..qn, p1..pn otherwise."""
        if n == 1:
            variables = ['q', 'p']
        else:
            variables = [f"q{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
        return cls(ExpressionFunction(source, variables, parameters), n=n)

    def energy(self, z) -> float:
        return real(self.H(list(z)))

    def vector_field(self, z) -> np.ndarray:
        _, partials = gradient(self.H, [float(v) for v in z])
        return self.omega @ np.array([real(v) for v in partials], dtype=float)


def hamiltonian_flow(HS: HamiltonianSystem, z0, t: float, steps: Optional[int] = None) -> np.ndarray:
    """States z_0, ..., z_steps of the RK4 integration of X_H over [0, t]."""
    steps = Config.FLOW_STEPS if steps is None else steps
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    z = as_vector(z0, 2 * HS.n)
    dt = t / steps
    states = [z]
    for _ in range(steps):
        k1 = HS.vector_field(z)
        k2 = HS.vector_field(z + 0.5 * dt * k1)
        k3 = HS.vector_field(z + 0.5 * dt * k2)
        k4 = HS.vector_field(z + dt * k3)
        z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        states.append(z)
    return np.array(states)


def flow_map(HS: HamiltonianSystem, z0, t: float, steps: Optional[int] = None) -> np.ndarray:
    """Endpoint of the time-t flow."""
    return hamiltonian_flow(HS, z0, t, steps)[-1]


def flow_lagrangian_set(HS: HamiltonianSystem, t: float, sample_grid: Sequence,
                        steps: Optional[int] = None) -> np.ndarray:
    """Points (q, psi_1^t(q, p), -p, psi_2^t(q, p)) of the flow-generated set.

    Each row of ``sample_grid`` is a point (q, p) of T*Q; the result rows are
    elements of T*(Q x Q) in the (q0, q1, p0, p1) chart.
    """
    n = HS.n
    grid = np.atleast_2d(np.asarray(sample_grid, dtype=float))
    if grid.shape[1] != 2 * n:
        raise ValueError(f"Grid points need {2 * n} coordinates, got {grid.shape[1]}")
    rows: List[np.ndarray] = []
    for z in grid:
        q, p = z[:n], z[n:]
        end = flow_map(HS, z, t, steps) if t != 0 else z
        rows.append(np.concatenate([q, end[:n], -p, end[n:]]))
    return np.array(rows)

"""Discrete Chaplygin sleigh on SE(2).

A rigid body of mass m and inertia J about its center of mass, at body
coordinates (a, b) from a knife-edge contact point that cannot slide
sideways. Elements of SE(2) are (theta, x, y).
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..groupoid import SE2Group, se2_to_matrix, wrap_angle
from ..lagrangian import DiscreteLagrangian
from ..numkernel import cos, sin, tan
from .system import ConstraintDistribution, ConstraintManifold, NonholonomicSystem


@dataclass(frozen=True)
class SleighParams:
    """Physical parameters of the sleigh."""

    m: float = 1.0
    a: float = 0.0
    b: float = 0.0
    J: float = 1.0

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"Mass must be positive, got {self.m}")
        if not self.J > 0:
            raise ValueError(f"Inertia must be positive, got {self.J}")

    @property
    def K(self) -> float:
        """Inertia about the contact point, m a^2 + m b^2 + J."""
        return self.m * (self.a ** 2 + self.b ** 2) + self.J

    @classmethod
    def from_dict(cls, data: Dict[str, float]) -> 'SleighParams':
        return cls(**{key: float(data[key]) for key in ('m', 'a', 'b', 'J') if key in data})

    def to_dict(self) -> Dict[str, float]:
        return {'m': self.m, 'a': self.a, 'b': self.b, 'J': self.J}


def inertia_matrix(params: SleighParams) -> np.ndarray:
    """Weighted inertia matrix of the trace-form Lagrangian."""
    m, a, b, J = params.m, params.a, params.b, params.J
    return np.array([
        [J / 2 + m * a * a, m * a * b, m * a],
        [m * a * b, J / 2 + m * b * b, m * b],
        [m * a, m * b, m],
    ])


def sleigh_trace_lagrangian(params: SleighParams, g) -> float:
    """L(A) = Tr(A IJ A^T) / 2 - Tr(A IJ) for the matrix form A of g."""
    A = se2_to_matrix(g)
    weighted = inertia_matrix(params)
    return float(0.5 * np.trace(A @ weighted @ A.T) - np.trace(A @ weighted))


def sleigh_lagrangian(params: SleighParams) -> DiscreteLagrangian:
    """Coordinate form of the trace Lagrangian; differentiable by AD."""
    m, a, b, J = params.m, params.a, params.b, params.J

    def L(g):
        theta, x, y = g
        c, s = cos(theta), sin(theta)
        return ((m * a * x + m * b * y - m * a * a - m * b * b - J) * c
                + m * (a * y - b * x) * s
                + 0.5 * m * ((x - a) * (x - a) + (y - b) * (y - b))
                + 0.5 * (J - m))
    return DiscreteLagrangian(SE2Group(), L, name="sleigh")


def sleigh_manifold() -> ConstraintManifold:
    """M_c = {(1 - cos theta) x - y sin theta = 0}, charted by (theta, u)."""

    def residual(g):
        theta, x, y = g
        return [(1.0 - cos(theta)) * x - y * sin(theta)]

    def chart(u):
        theta, v = u
        return [theta, v, v * tan(0.5 * theta)]

    def chart_inverse(g):
        return [g[0], g[1]]
    return ConstraintManifold(residual, chart, chart_inverse, dim=2)


def sleigh_distribution() -> ConstraintDistribution:
    """D_c = span{e, e1}: rotation and forward motion, no sideways slip."""
    return ConstraintDistribution(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))


def _alternate_branch(g):
    # sin(theta2) = sin(theta1) also holds on theta2 = pi - theta1
    return [float(wrap_angle(np.pi - float(g[0]))), float(g[1])]


def sleigh_system(params: SleighParams) -> NonholonomicSystem:
    return NonholonomicSystem(sleigh_lagrangian(params), sleigh_manifold(), sleigh_distribution(),
                              name="sleigh", alternate_seed=_alternate_branch)


def sleigh_closed_form_maps(mu) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form restricted source and target of mu = (theta, x, y, p_theta, p_x, p_y).

    Returns:
        (i* alpha~(mu), i* beta~(mu)) as two 2-vectors
    """
    theta, x, y, p_theta, p_x, p_y = (float(v) for v in mu)
    source = np.array([p_theta - y * p_x + x * p_y, p_x])
    target = np.array([p_theta, p_x * np.cos(theta) + p_y * np.sin(theta)])
    return source, target


def sleigh_momenta(params: SleighParams, g) -> np.ndarray:
    """Gradient (dL/dtheta, dL/dx, dL/dy) of the sleigh Lagrangian."""
    m, a, b = params.m, params.a, params.b
    theta, x, y = (float(v) for v in g)
    c, s = np.cos(theta), np.sin(theta)
    return np.array([
        m * (a * y - b * x) * c + (params.K - m * a * x - m * b * y) * s,
        m * a * c - m * b * s + m * (x - a),
        m * b * c + m * a * s + m * (y - b),
    ])


def suslov_residual(params: SleighParams, g, h) -> np.ndarray:
    """Discrete Euler-Poincare-Suslov equations written out for the sleigh.

    Component 0 balances angular momentum about the contact point,
    component 1 forward momentum; both vanish iff (g, h) solves the
    nonholonomic DEL equations.
    """
    m, a, b, K = params.m, params.a, params.b, params.K
    t1, x1, y1 = (float(v) for v in g)
    t2, x2, y2 = (float(v) for v in h)
    c1, s1, c2, s2 = np.cos(t1), np.sin(t1), np.cos(t2), np.sin(t2)
    angular = (m * (a * y1 - b * x1) * c1 - m * (a * x1 + b * y1) * s1 + K * s1
               - (m * a * y2 - m * b * x2 + K * s2))
    forward = (-m * a * c1 - m * b * s1 + m * a + m * x1 * c1 + m * y1 * s1
               - (m * x2 + m * a * c2 - m * b * s2 - m * a))
    return np.array([angular, forward])

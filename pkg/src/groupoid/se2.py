"""SE(2) as a groupoid over a point, and its cotangent groupoid over se(2)*.

Elements are stored as (theta, x, y) with theta in (-pi, pi]; the angle is
wrapped after every multiplication. Lie-algebra vectors (omega, v1, v2) use the
basis {e, e1, e2} with [e, e1] = e2, [e, e2] = -e1, [e1, e2] = 0.
"""

import math
from typing import List

import numpy as np

from ..numkernel import cos, derivatives, real, sin, solve_small
from ..utils.errors import DomainError
from .base import GroupoidRealization, pack

TWO_PI = 2.0 * math.pi

# below this |omega| the removable singularity of exp is replaced by its series
EXP_SWITCH = 1e-8


def wrap_angle(theta):
    """Representative of theta in (-pi, pi]."""
    k = math.ceil((real(theta) - math.pi) / TWO_PI)
    return theta - TWO_PI * k if k else theta


def _exp_coefficients(omega):
    """sin(w)/w and (cos(w) - 1)/w."""
    if abs(real(omega)) < EXP_SWITCH:
        return 1.0 - omega * omega / 6.0, -omega / 2.0 + omega * omega * omega / 24.0
    return sin(omega) / omega, (cos(omega) - 1.0) / omega


def se2_exp(xi):
    """Group exponential of (omega, v1, v2)."""
    omega, v1, v2 = list(xi)
    s, c = _exp_coefficients(omega)
    return pack([wrap_angle(omega), v1 * s + v2 * c, v2 * s - v1 * c])


def se2_log(g):
    """Inverse of se2_exp on (-pi, pi) x R^2."""
    theta, x, y = list(g)
    theta = wrap_angle(theta)
    if abs(real(theta)) >= math.pi:
        raise DomainError("se2_log is undefined at theta = pi")
    s, c = _exp_coefficients(theta)
    det = s * s + c * c
    return pack([theta, (s * x - c * y) / det, (c * x + s * y) / det])


def se2_hat(xi) -> np.ndarray:
    omega, v1, v2 = (float(v) for v in xi)
    return np.array([[0.0, -omega, v1],
                     [omega, 0.0, v2],
                     [0.0, 0.0, 0.0]])


def se2_vee(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return np.array([X[1, 0], X[0, 2], X[1, 2]])


def se2_bracket(xi, eta) -> np.ndarray:
    """Lie bracket via the matrix commutator."""
    A, B = se2_hat(xi), se2_hat(eta)
    return se2_vee(A @ B - B @ A)


def se2_to_matrix(g) -> np.ndarray:
    """Homogeneous 3x3 matrix of (theta, x, y)."""
    theta, x, y = (float(v) for v in g)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, x],
                     [s, c, y],
                     [0.0, 0.0, 1.0]])


def se2_from_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    return np.array([wrap_angle(math.atan2(M[1, 0], M[0, 0])), M[0, 2], M[1, 2]])


def _random_pose(rng: np.random.Generator, scale: float) -> np.ndarray:
    return np.array([rng.uniform(-math.pi, math.pi),
                     rng.uniform(-scale, scale),
                     rng.uniform(-scale, scale)])


class SE2Group(GroupoidRealization):
    """SE(2) as a Lie groupoid over a single point: every pair composes."""

    name = "SE(2)"
    element_dim = 3
    base_dim = 0
    is_affine = False

    def source(self, g):
        return pack([])

    def target(self, g):
        return pack([])

    def multiply(self, g, h):
        t1, x1, y1 = list(g)
        t2, x2, y2 = list(h)
        c, s = cos(t1), sin(t1)
        return pack([wrap_angle(t1 + t2), x1 + c * x2 - s * y2, y1 + s * x2 + c * y2])

    def identity(self, x=()):
        return pack([0.0, 0.0, 0.0])

    def inverse(self, g):
        t, x, y = list(g)
        c, s = cos(t), sin(t)
        return pack([wrap_angle(-t), -(c * x + s * y), s * x - c * y])

    @property
    def fiber_dim(self) -> int:
        return 3

    def element_with_source(self, x, u):
        t, px, py = list(u)
        return pack([wrap_angle(t), px, py])

    def fiber_coordinates(self, g):
        return pack(list(g))

    def random_fiber(self, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        return _random_pose(rng, scale)

    def cotangent(self) -> 'CotangentSE2':
        return CotangentSE2()

    @property
    def coordinate_names(self) -> List[str]:
        return ['theta', 'x', 'y']


class CotangentSE2(GroupoidRealization):
    """T*SE(2) over se(2)*, elements (theta, x, y, p_theta, p_x, p_y).

    alpha~ pulls the covector back by right translation, beta~ by left
    translation; both translation derivatives are taken by AD through the
    group multiplication.
    """

    name = "T*SE(2)"
    element_dim = 6
    base_dim = 3
    is_affine = False

    def __init__(self):
        self.group = SE2Group()

    def split(self, mu):
        mu = list(mu)
        return mu[:3], mu[3:]

    def translation_jacobian(self, g, side: str) -> List[List]:
        """Rows d coords(exp(xi) g) / d xi ('right') or d coords(g exp(xi)) / d xi ('left') at xi = 0."""
        g = list(g)
        if side == 'right':
            def moved(xi):
                return self.group.multiply(se2_exp(xi), g)
        elif side == 'left':
            def moved(xi):
                return self.group.multiply(g, se2_exp(xi))
        else:
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        _, rows = derivatives(moved, [0.0, 0.0, 0.0], context=g)
        return rows

    def pullback(self, g, p, side: str) -> list:
        """Covector p at g pulled back to se(2)* by the given translation."""
        rows = self.translation_jacobian(g, side)
        p = list(p)
        return [sum((rows[i][j] * p[i] for i in range(3)), 0.0) for j in range(3)]

    def _push_forward(self, g, a) -> list:
        """Covector at g whose right pullback is a."""
        rows = self.translation_jacobian(g, 'right')
        transposed = [[rows[i][j] for i in range(3)] for j in range(3)]
        return solve_small(transposed, list(a))

    def source(self, mu):
        g, p = self.split(mu)
        return pack(self.pullback(g, p, 'right'))

    def target(self, mu):
        g, p = self.split(mu)
        return pack(self.pullback(g, p, 'left'))

    def multiply(self, mu, nu):
        g, _ = self.split(mu)
        h, _ = self.split(nu)
        k = list(self.group.multiply(g, h))
        return pack(k + self._push_forward(k, self.source(mu)))

    def identity(self, x):
        return pack([0.0, 0.0, 0.0] + list(x))

    def inverse(self, mu):
        g, p = self.split(mu)
        g_inv = list(self.group.inverse(g))
        _, rows = derivatives(self.group.inverse, g_inv)
        return pack(g_inv + [-sum((rows[i][j] * p[i] for i in range(3)), 0.0) for j in range(3)])

    @property
    def fiber_dim(self) -> int:
        return 3

    def element_with_source(self, x, u):
        g = list(self.group.element_with_source((), u))
        return pack(g + self._push_forward(g, x))

    def fiber_coordinates(self, mu):
        return pack(self.split(mu)[0])

    def random_fiber(self, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        return _random_pose(rng, scale)

    @property
    def coordinate_names(self) -> List[str]:
        return ['theta', 'x', 'y', 'p_theta', 'p_x', 'p_y']

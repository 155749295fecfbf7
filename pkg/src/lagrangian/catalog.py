"""Ready-made discrete Lagrangians on pair groupoids."""

from ..groupoid import PairGroupoid
from .discrete import DiscreteLagrangian


def free_particle(h: float = 1.0, n: int = 1) -> DiscreteLagrangian:
    """L(q0, q1) = |q1 - q0|^2 / (2 h^2)."""
    if h <= 0:
        raise ValueError(f"Step size must be positive, got {h}")

    def L(g):
        return sum((0.5 * ((b - a) / h) * ((b - a) / h) for a, b in zip(g[:n], g[n:])), 0.0)
    return DiscreteLagrangian(PairGroupoid(n), L, name="free_particle", step=h)


def quadratic_lagrangian(n: int = 1) -> DiscreteLagrangian:
    """L(q0, q1) = |q1 - q0|^2 / 2; translation invariant."""
    def L(g):
        return sum((0.5 * (b - a) * (b - a) for a, b in zip(g[:n], g[n:])), 0.0)
    return DiscreteLagrangian(PairGroupoid(n), L, name="quadratic")


def midpoint_oscillator(h: float = 0.1) -> DiscreteLagrangian:
    """Midpoint discretization of the unit harmonic oscillator.

    L(q0, q1) = (q1 - q0)^2 / (2h) - (h/8)(q0 + q1)^2, whose DEL successor is
    q2 = 2 q1 (1 - h^2/4) / (1 + h^2/4) - q0.
    """
    if h <= 0:
        raise ValueError(f"Step size must be positive, got {h}")

    def L(g):
        q0, q1 = g
        return (q1 - q0) * (q1 - q0) / (2.0 * h) - (h / 8.0) * (q0 + q1) * (q0 + q1)
    return DiscreteLagrangian(PairGroupoid(1), L, name="midpoint_oscillator", step=h)


def singular_lagrangian(h: float = 0.1) -> DiscreteLagrangian:
    """Degenerate L(x1, y1, x2, y2) = ((x2 - x1)/h)^2 / 2 + x1^2 y1 / 2 on pair(R^2).

    Its Lagrangian set is only partially integrable: forward chains exist
    through points with x2 = 0, and infinitely only through x1 = x2 = 0.
    """
    if h <= 0:
        raise ValueError(f"Step size must be positive, got {h}")

    def L(g):
        x1, y1, x2, y2 = g
        return 0.5 * ((x2 - x1) / h) * ((x2 - x1) / h) + 0.5 * x1 * x1 * y1
    return DiscreteLagrangian(PairGroupoid(2), L, name="singular", step=h)


CATALOG = {
    'free_particle': free_particle,
    'quadratic': quadratic_lagrangian,
    'midpoint_oscillator': midpoint_oscillator,
    'singular': singular_lagrangian,
}

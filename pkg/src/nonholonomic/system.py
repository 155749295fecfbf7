"""Discrete nonholonomic systems (L, M_c, D_c) on SE(2).

The nonholonomic DEL equations impose F+L(g) = F-L(h) only along the
constraint distribution D_c, with g and h restricted to the constraint
manifold M_c:

    i*_{D_c}(beta~(dL(g))) = i*_{D_c}(alpha~(dL(h))),    g, h in M_c.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..dynamics import ImplicitEquation
from ..groupoid import wrap_angle
from ..lagrangian import DiscreteLagrangian, Side
from ..numkernel import TolerancePolicy, DEFAULT_TOLERANCES, as_matrix, evaluate, gauss_newton, real
from ..utils import console
from ..utils.errors import ConvergenceError, NotOnConstraintError

MC_MEMBERSHIP_TOL = 1e-8
ROOT_SEPARATION = 1e-6


@dataclass
class ConstraintDistribution:
    """D_c spanned by the columns of ``basis`` (Lie-algebra coordinates)."""

    basis: np.ndarray

    def __post_init__(self):
        self.basis = as_matrix(self.basis)
        if np.linalg.matrix_rank(self.basis) != self.basis.shape[1]:
            raise ValueError("Constraint distribution basis must have full column rank")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def restrict(self, covector) -> list:
        """i*_{D_c}: covector coordinates paired with the basis vectors."""
        covector = list(covector)
        return [sum((self.basis[i, j] * covector[i] for i in range(len(covector))
                     if self.basis[i, j] != 0.0), 0.0)
                for j in range(self.dim)]


@dataclass
class ConstraintManifold:
    """M_c given by a residual function and a global chart of dimension ``dim``."""

    residual: Callable
    chart: Callable
    chart_inverse: Callable
    dim: int

    def membership(self, g) -> float:
        return float(np.max(np.abs(evaluate(self.residual, g))))

    def contains(self, g, tol: float = MC_MEMBERSHIP_TOL) -> bool:
        return self.membership(g) < tol


class NonholonomicSystem:
    """Discrete nonholonomic Lagrangian system on a Lie group."""

    def __init__(self, lagrangian: DiscreteLagrangian, manifold: ConstraintManifold,
                 distribution: ConstraintDistribution, name: str = "nh",
                 alternate_seed: Optional[Callable] = None):
        if manifold.dim != distribution.dim:
            raise ValueError(f"dim M_c = {manifold.dim} but dim D_c = {distribution.dim}")
        self.lagrangian = lagrangian
        self.manifold = manifold
        self.distribution = distribution
        self.name = name
        self.alternate_seed = alternate_seed

    @property
    def realization(self):
        return self.lagrangian.realization

    def require_on_manifold(self, g):
        residual = self.manifold.membership(g)
        if not residual < MC_MEMBERSHIP_TOL:
            raise NotOnConstraintError(residual)

    def _restricted_generic(self, g, side: Side) -> list:
        covector = self.lagrangian._legendre_generic(g, side)[self.realization.base_dim:]
        return self.distribution.restrict(covector)

    def nh_legendre(self, g, side: Side = Side.PLUS) -> np.ndarray:
        """i*_{D_c} o F(+/-)L at g in M_c."""
        self.require_on_manifold(g)
        return np.array([real(v) for v in self._restricted_generic(g, side)])

    def nh_del_residual(self, g, h) -> np.ndarray:
        self.require_on_manifold(g)
        self.require_on_manifold(h)
        return self.nh_legendre(g, Side.PLUS) - self.nh_legendre(h, Side.MINUS)

    def _solve_from(self, target: np.ndarray, seed: np.ndarray, tol: TolerancePolicy):
        def F(u):
            minus = self._restricted_generic(list(self.manifold.chart(u)), Side.MINUS)
            return [t - m for t, m in zip(target, minus)]
        return gauss_newton(F, seed, tol)

    def _accept(self, u: np.ndarray) -> Optional[np.ndarray]:
        h = evaluate(self.manifold.chart, u)
        if not np.all(np.isfinite(h)):
            return None
        h[0] = wrap_angle(h[0])
        if abs(h[0]) >= np.pi - 1e-6 or not self.manifold.contains(h, 1e-10):
            return None
        return h

    def nh_roots(self, g, seeds: Optional[Sequence] = None,
                 tol: TolerancePolicy = DEFAULT_TOLERANCES) -> List[np.ndarray]:
        """All distinct successors reached from the given chart seeds.

        Without seeds the chart coordinates of g and, if configured, the
        alternate branch seed are used.
        """
        self.require_on_manifold(g)
        g = np.array([real(v) for v in g], dtype=float)
        target = self.nh_legendre(g, Side.PLUS)
        if seeds is None:
            seeds = [evaluate(self.manifold.chart_inverse, g)]
            if self.alternate_seed is not None:
                seeds.append(evaluate(self.alternate_seed, g))
        roots: List[np.ndarray] = []
        for seed in seeds:
            result = self._solve_from(target, np.asarray(seed, dtype=float), tol)
            if not result.converged:
                continue
            h = self._accept(result.x)
            if h is None:
                continue
            if all(_distance(h, other) > ROOT_SEPARATION for other in roots):
                roots.append(h)
        return roots

    def nh_evolve(self, g, seed=None, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
        """Successor h in M_c of g; the root nearest to the seed wins.

        Args:
            g: element of M_c
            seed: group element used as Newton start (default g itself)
            tol: tolerance policy
        """
        self.require_on_manifold(g)
        g = np.array([real(v) for v in g], dtype=float)
        start = g if seed is None else np.asarray(seed, dtype=float)
        seeds = [evaluate(self.manifold.chart_inverse, start)]
        if self.alternate_seed is not None:
            seeds.append(evaluate(self.alternate_seed, start))
        roots = self.nh_roots(g, seeds, tol)
        if not roots:
            raise ConvergenceError(f"No nonholonomic successor found for {self.name}")
        if len(roots) > 1:
            console.warn(f"{self.name}: {len(roots)} distinct successors, keeping the one nearest the seed")
        return min(roots, key=lambda h: _distance(h, start))

    def nh_trajectory(self, g0, steps: int, tol: TolerancePolicy = DEFAULT_TOLERANCES,
                      on_step: Optional[Callable[[int], None]] = None) -> List[np.ndarray]:
        if steps < 0:
            raise ValueError(f"steps must be >= 0, got {steps}")
        elements = [np.array([real(v) for v in g0], dtype=float)]
        for k in range(steps):
            elements.append(self.nh_evolve(elements[-1], tol=tol))
            if on_step is not None:
                on_step(k)
        return elements

    # Restricted Lagrangian set

    def restricted_source(self, mu) -> list:
        return self.distribution.restrict(self.lagrangian.cotangent.source(mu))

    def restricted_target(self, mu) -> list:
        return self.distribution.restrict(self.lagrangian.cotangent.target(mu))

    def restricted_lagrangian_set(self) -> ImplicitEquation:
        """dL(M_c) classified against the restricted source and target maps."""
        L = self.lagrangian
        n = self.realization.element_dim

        def psi(u):
            return L._generic_differential(list(self.manifold.chart(u)))

        def membership(mu):
            mu = list(mu)
            g = mu[:n]
            gradient_gap = [a - b for a, b in zip(mu[n:], L._generic_differential(g)[n:])]
            return list(self.manifold.residual(g)) + gradient_gap

        equation = ImplicitEquation.parametrized(L.cotangent, psi, self.manifold.dim,
                                                 membership=membership, name=f"S_({L.name},M_c)")
        return equation.with_maps(self.restricted_source, self.restricted_target)


def _distance(g, h) -> float:
    """Max-norm distance with the angle compared modulo 2 pi."""
    diff = np.asarray(g, dtype=float) - np.asarray(h, dtype=float)
    diff[0] = wrap_angle(diff[0])
    return float(np.max(np.abs(diff)))

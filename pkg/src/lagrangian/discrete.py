"""Discrete Lagrangians on a groupoid: Legendre transforms, DEL residual, evolution.

For the pair groupoid the Legendre transforms are

    F-L(q0, q1) = (q0, -D1 L(q0, q1)),    F+L(q0, q1) = (q1, D2 L(q0, q1))

and for a Lie group they are the right / left trivialized differentials.
Both are computed as the cotangent source / target of dL, which puts
Lagrangian dynamics and the cotangent groupoid on one code path.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..dynamics import ImplicitEquation
from ..expr import ExpressionFunction
from ..groupoid import GroupoidRealization, pack
from ..numkernel import (
    TolerancePolicy, DEFAULT_TOLERANCES, gauss_newton, gradient, jacobian, real,
)
from ..utils.errors import NonFiniteError, NotComposableError, SingularError


class Side(Enum):
    """Which discrete Legendre transform."""
    MINUS = "minus"
    PLUS = "plus"


@dataclass
class LegendreValue:
    """Point of A*G: a base point and a covector in the algebroid fiber."""

    base_point: np.ndarray
    covector: np.ndarray

    def __post_init__(self):
        self.base_point = np.asarray(self.base_point, dtype=float)
        self.covector = np.asarray(self.covector, dtype=float)
        if not (np.all(np.isfinite(self.base_point)) and np.all(np.isfinite(self.covector))):
            raise NonFiniteError("LegendreValue entries must be finite")

    @property
    def coordinates(self) -> np.ndarray:
        """Base-point and covector coordinates as one vector."""
        return np.concatenate([self.base_point, self.covector])


def _real_array(values) -> np.ndarray:
    return np.array([real(v) for v in values], dtype=float)


class DiscreteLagrangian:
    """Scalar function on groupoid elements, differentiable by forward-mode AD."""

    def __init__(self, realization: GroupoidRealization, func: Callable, name: str = "L",
                 step: Optional[float] = None):
        self.realization = realization
        self.cotangent = realization.cotangent()
        self.func = func
        self.name = name
        self.step = step

    @classmethod
    def from_expression(cls, source: str, realization: GroupoidRealization,
                        variables: Optional[Sequence[str]] = None,
                        parameters: Optional[Dict[str, float]] = None,
                        name: str = "L") -> 'DiscreteLagrangian':
        """Lagrangian from an expression over the realization's coordinates."""
        variables = list(variables or realization.coordinate_names)
        if len(variables) != realization.element_dim:
            raise ValueError(f"{realization.name} needs {realization.element_dim} variables, "
                             f"got {len(variables)}")
        expression = ExpressionFunction(source, variables, parameters)
        step = (parameters or {}).get('h')
        return cls(realization, expression, name=name, step=step)

    def __call__(self, g):
        return self.func(list(g))

    def __repr__(self):
        return f"DiscreteLagrangian({self.name!r}, {self.realization!r})"

    # Differentials

    def _generic_differential(self, g) -> list:
        g = list(g)
        _, partials = gradient(self.func, g)
        return g + list(partials)

    def differential(self, g):
        """dL(g) in the cotangent chart: element coordinates followed by the gradient."""
        self.realization.check_element(g)
        return pack(self._generic_differential(g))

    def _legendre_generic(self, g, side: Side) -> list:
        dL = self._generic_differential(g)
        if side is Side.PLUS:
            return list(self.cotangent.target(dL))
        return list(self.cotangent.source(dL))

    def _split_base(self, coords) -> LegendreValue:
        base_dim = self.realization.base_dim
        coords = _real_array(coords)
        return LegendreValue(coords[:base_dim], coords[base_dim:])

    def legendre(self, g, side: Side = Side.PLUS) -> LegendreValue:
        """F+L(g) = beta~(dL(g)) or F-L(g) = alpha~(dL(g))."""
        self.realization.check_element(g)
        return self._split_base(self._legendre_generic(g, side))

    def _translation_generic(self, g, side: Side) -> list:
        G = self.realization
        g = list(g)
        if side is Side.PLUS:
            x = G.target(g)
            zero = list(G.identity_fiber(x))

            def moved(v):
                k = G.element_with_source(x, [a + b for a, b in zip(zero, v)])
                return self.func(list(G.multiply(g, k)))
        else:
            x = G.source(g)
            zero = list(G.identity_fiber(x))

            def moved(v):
                k = G.element_with_source(x, [a + b for a, b in zip(zero, v)])
                return -self.func(list(G.multiply(G.inverse(k), g)))
        _, partials = gradient(moved, [0.0] * G.fiber_dim, context=g)
        return list(x) + list(partials)

    def translation_derivative(self, g, side: Side = Side.PLUS) -> LegendreValue:
        """Legendre transform by direct differentiation of L along translations.

        PLUS: v -> L(g * k_v) with k_v near the identity at beta(g);
        MINUS: v -> -L(i(k_v) * g) with k_v near the identity at alpha(g).
        """
        self.realization.check_element(g)
        return self._split_base(self._translation_generic(g, side))

    # Dynamics

    def del_residual(self, g, h) -> np.ndarray:
        """F+L(g) - F-L(h) in fiber coordinates; zero iff (g, h) solves DEL."""
        G = self.realization
        G.check_element(g)
        G.check_element(h)
        if not G.is_composable(g, h):
            raise NotComposableError(G.mismatch(g, h))
        plus = self.legendre(g, Side.PLUS)
        minus = self.legendre(h, Side.MINUS)
        return plus.covector - minus.covector

    def _check_regular(self, F: Callable, seed: np.ndarray, tol: TolerancePolicy, what: str):
        _, J = jacobian(F, seed)
        sigma = np.linalg.svd(J, compute_uv=False) if J.size else np.zeros(1)
        smallest = float(sigma[-1]) if sigma.size else 0.0
        if smallest < tol.rank_rel_tol * max(1.0, float(sigma[0])):
            raise SingularError(f"{self.name} is singular at the {what} seed", smallest)

    def evolve(self, g, seed=None, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
        """Successor h of g with alpha(h) = beta(g) and del_residual(g, h) = 0.

        Args:
            g: current element
            seed: fiber coordinates of the Newton start (default constant velocity)
            tol: tolerance policy

        Returns:
            The successor element as a float array.
        """
        G = self.realization
        G.check_element(g)
        g = _real_array(g)
        base = G.target(g)
        plus = np.array(self._split_base(self._legendre_generic(g, Side.PLUS)).covector)
        base_dim = G.base_dim

        def F(u):
            h = G.element_with_source(base, u)
            minus = self._legendre_generic(h, Side.MINUS)[base_dim:]
            return [p - m for p, m in zip(plus, minus)]

        u0 = _real_array(G.default_successor_fiber(g) if seed is None else seed)
        self._check_regular(F, u0, tol, "successor")
        u = gauss_newton(F, u0, tol).require(f"No DEL successor found for {self.name}")
        return _real_array(G.element_with_source(base, u))

    def legendre_inverse(self, p: LegendreValue, seed=None,
                         tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
        """Element h with F-L(h) = p."""
        G = self.realization
        base = p.base_point

        def F(u):
            h = G.element_with_source(base, u)
            minus = self._legendre_generic(h, Side.MINUS)[G.base_dim:]
            return [m - c for m, c in zip(minus, p.covector)]

        u0 = _real_array(G.identity_fiber(base) if seed is None else seed)
        self._check_regular(F, u0, tol, "Legendre inversion")
        u = gauss_newton(F, u0, tol).require(f"Could not invert F-{self.name}")
        return _real_array(G.element_with_source(base, u))

    def hamiltonian_evolution(self, p: LegendreValue, seed=None,
                              tol: TolerancePolicy = DEFAULT_TOLERANCES) -> LegendreValue:
        """Discrete Hamiltonian evolution F+L o (F-L)^-1."""
        return self.legendre(self.legendre_inverse(p, seed, tol), Side.PLUS)

    def trajectory(self, g0, steps: int, tol: TolerancePolicy = DEFAULT_TOLERANCES,
                   on_step: Optional[Callable[[int], None]] = None) -> List[np.ndarray]:
        """g0 followed by ``steps`` successive DEL successors."""
        if steps < 0:
            raise ValueError(f"steps must be >= 0, got {steps}")
        elements = [_real_array(g0)]
        for k in range(steps):
            elements.append(self.evolve(elements[-1], tol=tol))
            if on_step is not None:
                on_step(k)
        return elements

    def action_sum(self, elements: Sequence) -> float:
        """Discrete action: sum of L over the elements of a sequence."""
        return float(sum(real(self(g)) for g in elements))

    # Lagrangian set

    def build_sl(self) -> 'LagrangianSet':
        return LagrangianSet(self)


class LagrangianSet:
    """S_L = dL(G) as a PARAMETRIZED implicit equation on the cotangent groupoid."""

    def __init__(self, lagrangian: DiscreteLagrangian):
        self.lagrangian = lagrangian
        G = lagrangian.realization
        n = G.element_dim

        def membership(mu):
            mu = list(mu)
            return [a - b for a, b in zip(mu[n:], lagrangian._generic_differential(mu[:n])[n:])]

        self.equation = ImplicitEquation.parametrized(
            lagrangian.cotangent, lagrangian._generic_differential, n,
            membership=membership, name=f"S_{lagrangian.name}")

    def point(self, g) -> np.ndarray:
        return self.lagrangian.differential(g)

    def contains(self, mu) -> bool:
        return self.equation.contains(mu)

    def with_maps(self, source, target) -> ImplicitEquation:
        return self.equation.with_maps(source, target)

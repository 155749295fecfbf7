"""Pointwise, depth-bounded integrability of nonlinear implicit equations.

A point g of E has forward depth d when there is a chain g = g_0, g_1, ..., g_d
in E with beta(g_i) = alpha(g_{i+1}). Chains are found by one joint
Gauss-Newton feasibility solve per depth, warm-started from the previous
depth and then from random seeds in a box.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..numkernel import TolerancePolicy, evaluate, gauss_newton, real
from ..utils import console
from ..utils.config import Config
from ..utils.errors import DomainError, InconclusiveError
from .equation import Direction, ImplicitEquation, Representation


@dataclass
class DirectionResult:
    direction: Direction
    depth: int
    requested: int
    inconclusive: bool = False
    best_residual: float = 0.0
    chain: List[np.ndarray] = field(default_factory=list)


@dataclass
class Classification:
    """Forward and backward depth of one point."""

    point: np.ndarray
    forward: DirectionResult
    backward: DirectionResult

    @property
    def forward_depth(self) -> int:
        return self.forward.depth

    @property
    def backward_depth(self) -> int:
        return self.backward.depth

    @property
    def inconclusive(self) -> bool:
        return self.forward.inconclusive or self.backward.inconclusive

    def require_conclusive(self) -> 'Classification':
        if self.inconclusive:
            raise InconclusiveError(
                f"Classification of {np.round(self.point, 6).tolist()} is inconclusive")
        return self

    def as_tuple(self) -> Tuple[int, int]:
        return self.forward_depth, self.backward_depth


class _ChainProblem:
    """Unknown blocks for d chain elements and the matching residual."""

    def __init__(self, E: ImplicitEquation, anchor: np.ndarray, direction: Direction):
        self.E = E
        self.anchor = [float(v) for v in anchor]
        self.direction = direction
        self.parametrized = E.representation is Representation.PARAMETRIZED
        self.block = E.param_dim if self.parametrized else E.realization.element_dim

    def element(self, z):
        if self.parametrized:
            return self.E.parametrization(z)
        return z

    def _membership(self, g) -> list:
        rep = self.E.representation
        if rep is Representation.PARAMETRIZED:
            return []
        if rep is Representation.CONSTRAINT_MAP:
            return list(self.E.constraint(g))
        S = self.E.subspace
        M, c = S.constraint_matrix, S.offset
        return [sum((M[i, j] * g[j] for j in range(len(g))), 0.0) - c[i] for i in range(S.rank)]

    def residual(self, d: int) -> Callable:
        E = self.E
        forward = self.direction is Direction.FORWARD

        def F(z):
            out = []
            previous = self.anchor
            for i in range(d):
                g = list(self.element(z[i * self.block:(i + 1) * self.block]))
                out.extend(self._membership(g))
                if forward:
                    lhs, rhs = E.source(g), E.target(previous)
                else:
                    lhs, rhs = E.target(g), E.source(previous)
                out.extend(a - b for a, b in zip(lhs, rhs))
                previous = g
            return out
        return F

    def anchor_seed(self) -> np.ndarray:
        """Unknown block reproducing the anchor (or a neighbour of it)."""
        if not self.parametrized:
            return np.array(self.anchor)
        return np.zeros(self.block)

    def chain(self, z: np.ndarray, d: int) -> List[np.ndarray]:
        return [evaluate(self.element, z[i * self.block:(i + 1) * self.block]) for i in range(d)]


def _search_direction(problem: _ChainProblem, depth: int, seeds: int, box: float,
                      rng: np.random.Generator, tol: TolerancePolicy) -> DirectionResult:
    result = DirectionResult(problem.direction, 0, depth)
    warm: Optional[np.ndarray] = None
    for d in range(1, depth + 1):
        F = problem.residual(d)
        candidates = []
        if warm is not None:
            candidates.append(np.concatenate([warm, warm[-problem.block:]]))
        else:
            candidates.append(problem.anchor_seed())
        candidates.extend(rng.uniform(-box, box, size=problem.block * d) for _ in range(seeds))

        best = np.inf
        found = None
        for z0 in candidates:
            try:
                solve = gauss_newton(F, z0, tol)
            except (DomainError, ZeroDivisionError, OverflowError, ValueError):
                continue
            if solve.converged:
                found = solve.x
                break
            best = min(best, solve.residual_norm)
        if found is None:
            result.best_residual = best
            result.inconclusive = bool(best < Config.INCONCLUSIVE_RESIDUAL)
            return result
        warm = found
        result.depth = d
        result.chain = problem.chain(found, d)
    return result


def classify_point(E: ImplicitEquation, g, depth: int = 3, seeds: Optional[int] = None,
                   rng: Optional[np.random.Generator] = None, box: Optional[float] = None,
                   tol: Optional[TolerancePolicy] = None) -> Classification:
    """Largest d <= depth with a forward (backward) chain of d elements after (before) g.

    Args:
        E: equation in any representation
        g: point of E
        depth: maximal number of successors / predecessors searched
        seeds: random restarts per feasibility solve (default Config.CLASSIFY_SEEDS)
        rng: source of random seeds
        box: seeds are uniform in [-box, box]^n (default Config.SEED_BOX)
        tol: tolerance policy (default the equation's)

    Returns:
        Classification with forward/backward depth, inconclusive flags and the
        chains that were found.
    """
    tol = tol or E.tol
    seeds = Config.CLASSIFY_SEEDS if seeds is None else seeds
    box = Config.SEED_BOX if box is None else box
    rng = rng or np.random.default_rng(0)
    if seeds < 1:
        raise ValueError(f"seeds must be >= 1, got {seeds}")
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")

    point = np.array([real(v) for v in g], dtype=float)
    E.realization.check_element(point)
    if not E.contains(point):
        raise DomainError(f"Point is not in {E.name} (residual {E.residual(point):.3e})")

    results = []
    for direction in (Direction.FORWARD, Direction.BACKWARD):
        problem = _ChainProblem(E, point, direction)
        outcome = _search_direction(problem, depth, seeds, box, rng, tol)
        if outcome.inconclusive:
            console.warn(f"{direction.value} classification inconclusive at depth {outcome.depth + 1} "
                         f"(best residual {outcome.best_residual:.2e})")
        results.append(outcome)
    return Classification(point, results[0], results[1])

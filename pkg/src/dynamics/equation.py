"""Implicit difference equations E in G and their solutions."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from ..groupoid import GroupoidRealization, pack
from ..numkernel import (
    AffineMap, AffineSubspace, TolerancePolicy, DEFAULT_TOLERANCES, evaluate, gauss_newton, real,
)
from ..utils.errors import DimensionMismatchError, DomainError

MapLike = Union[AffineMap, Callable]


class Representation(Enum):
    """How the submanifold E is described."""
    AFFINE = "affine"
    CONSTRAINT_MAP = "constraint_map"
    PARAMETRIZED = "parametrized"


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class ChainMode(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    FULL = "full"


def _apply(map_like: MapLike, g):
    if isinstance(map_like, AffineMap):
        A, t = map_like.matrix, map_like.offset
        g = list(g)
        return pack([sum((A[i, j] * g[j] for j in range(len(g)) if A[i, j] != 0.0), 0.0) + t[i]
                     for i in range(A.shape[0])])
    return map_like(g)


@dataclass(frozen=True, eq=False)
class ImplicitEquation:
    """A submanifold E of a groupoid, in one of three representations.

    ``source_override`` / ``target_override`` replace the realization's alpha
    and beta by any two surjective submersions onto a common base (used for
    the restricted nonholonomic maps). They may be AffineMaps or callables.
    """

    realization: GroupoidRealization
    representation: Representation
    subspace: Optional[AffineSubspace] = None
    constraint: Optional[Callable] = None
    parametrization: Optional[Callable] = None
    param_dim: int = 0
    membership: Optional[Callable] = None
    source_override: Optional[MapLike] = None
    target_override: Optional[MapLike] = None
    name: str = "E"
    tol: TolerancePolicy = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        rep = self.representation
        if rep is Representation.AFFINE:
            if not self.realization.is_affine:
                raise ValueError(f"AFFINE equations need an affine realization, not {self.realization.name}")
            if self.subspace is None:
                raise ValueError("AFFINE equation requires a subspace")
            if self.subspace.ambient_dim != self.realization.element_dim:
                raise DimensionMismatchError(
                    f"Subspace lives in R^{self.subspace.ambient_dim}, "
                    f"{self.realization.name} elements in R^{self.realization.element_dim}")
        elif rep is Representation.CONSTRAINT_MAP and self.constraint is None:
            raise ValueError("CONSTRAINT_MAP equation requires a constraint function")
        elif rep is Representation.PARAMETRIZED and (self.parametrization is None or self.param_dim < 1):
            raise ValueError("PARAMETRIZED equation requires a parametrization and param_dim >= 1")

    # Constructors

    @classmethod
    def affine(cls, realization: GroupoidRealization, subspace: AffineSubspace,
               name: str = "E") -> 'ImplicitEquation':
        return cls(realization, Representation.AFFINE, subspace=subspace, name=name, tol=subspace.tol)

    @classmethod
    def from_constraints(cls, realization: GroupoidRealization, M, c, name: str = "E",
                         tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'ImplicitEquation':
        """AFFINE equation {g : M g = c}."""
        subspace = AffineSubspace.from_constraints(M, c, tol, ambient_dim=realization.element_dim)
        return cls.affine(realization, subspace, name)

    @classmethod
    def constraint_map(cls, realization: GroupoidRealization, phi: Callable, name: str = "E",
                       tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'ImplicitEquation':
        return cls(realization, Representation.CONSTRAINT_MAP, constraint=phi, name=name, tol=tol)

    @classmethod
    def parametrized(cls, realization: GroupoidRealization, psi: Callable, param_dim: int,
                     membership: Optional[Callable] = None, name: str = "E",
                     tol: TolerancePolicy = DEFAULT_TOLERANCES) -> 'ImplicitEquation':
        return cls(realization, Representation.PARAMETRIZED, parametrization=psi,
                   param_dim=param_dim, membership=membership, name=name, tol=tol)

    def with_maps(self, source: MapLike, target: MapLike) -> 'ImplicitEquation':
        """Same set, classified against a different pair of source/target maps."""
        return replace(self, source_override=source, target_override=target)

    def with_tolerances(self, tol: TolerancePolicy) -> 'ImplicitEquation':
        return replace(self, tol=tol)

    # Structure

    def source(self, g):
        if self.source_override is None:
            return self.realization.source(g)
        return _apply(self.source_override, g)

    def target(self, g):
        if self.target_override is None:
            return self.realization.target(g)
        return _apply(self.target_override, g)

    @property
    def source_map(self) -> Optional[AffineMap]:
        if self.source_override is None:
            return self.realization.source_map
        return self.source_override if isinstance(self.source_override, AffineMap) else None

    @property
    def target_map(self) -> Optional[AffineMap]:
        if self.target_override is None:
            return self.realization.target_map
        return self.target_override if isinstance(self.target_override, AffineMap) else None

    def point(self, u) -> np.ndarray:
        """Element psi(u) of a PARAMETRIZED equation."""
        if self.representation is not Representation.PARAMETRIZED:
            raise ValueError("point() needs a PARAMETRIZED equation")
        return evaluate(self.parametrization, u)

    # Membership

    def residual(self, g) -> float:
        """Infinity-norm distance-like membership residual of g."""
        g = np.asarray([real(v) for v in g], dtype=float)
        self.realization.check_element(g)
        rep = self.representation
        if rep is Representation.AFFINE:
            return self.subspace.residual(g)
        if rep is Representation.CONSTRAINT_MAP:
            F = evaluate(self.constraint, g)
            return float(np.max(np.abs(F))) if F.size else 0.0
        if self.membership is not None:
            F = evaluate(self.membership, g)
            return float(np.max(np.abs(F))) if F.size else 0.0
        return self._inverse_parametrization_residual(g)

    def _inverse_parametrization_residual(self, g: np.ndarray) -> float:
        def mismatch(u):
            image = self.parametrization(u)
            return [a - b for a, b in zip(image, g)]

        best = np.inf
        rng = np.random.default_rng(0)
        seeds = [np.zeros(self.param_dim)] + [rng.uniform(-2.0, 2.0, self.param_dim) for _ in range(3)]
        for seed in seeds:
            result = gauss_newton(mismatch, seed, self.tol)
            best = min(best, result.residual_norm)
            if result.converged:
                return result.residual_norm
        return best

    def contains(self, g) -> bool:
        if self.representation is Representation.AFFINE:
            return self.subspace.contains(np.asarray(g, dtype=float))
        try:
            return self.residual(g) < self.tol.newton_tol
        except (DomainError, ZeroDivisionError, OverflowError, ValueError):
            return False

    def describe(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'realization': self.realization.name,
            'representation': self.representation.value,
            'dim': self.subspace.dim if self.subspace is not None else None,
        }


@dataclass
class AdmissibleSequence:
    """Ordered elements g_0, g_1, ... of one realization."""

    realization: GroupoidRealization
    elements: List[np.ndarray]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("An admissible sequence needs at least one element")
        self.elements = [np.asarray(g, dtype=float) for g in self.elements]
        for g in self.elements:
            self.realization.check_element(g)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_admissible(self, tol: float = 1e-10) -> bool:
        return all(self.realization.is_composable(g, h, tol)
                   for g, h in zip(self.elements, self.elements[1:]))


def is_admissible(seq: AdmissibleSequence, tol: float = 1e-10) -> bool:
    """beta(g_i) = alpha(g_{i+1}) for all consecutive entries."""
    return seq.is_admissible(tol)


def is_solution(seq: AdmissibleSequence, E: ImplicitEquation) -> bool:
    """Admissible and every element lies in E."""
    if not seq.is_admissible():
        return False
    return all(E.contains(g) for g in seq)


@dataclass
class EquationSequence:
    """Index-addressed family k -> E_k on one realization."""

    realization: GroupoidRealization
    family: Callable[[int], ImplicitEquation]
    _cache: Dict[int, ImplicitEquation] = field(default_factory=dict, repr=False)

    @classmethod
    def constant(cls, E: ImplicitEquation) -> 'EquationSequence':
        return cls(E.realization, lambda k: E)

    @classmethod
    def from_list(cls, equations: Sequence[ImplicitEquation], start: int = 0) -> 'EquationSequence':
        equations = list(equations)
        if not equations:
            raise ValueError("Empty equation list")

        def family(k: int) -> ImplicitEquation:
            if not start <= k < start + len(equations):
                raise IndexError(f"Equation index {k} outside [{start}, {start + len(equations)})")
            return equations[k - start]
        return cls(equations[0].realization, family)

    def __getitem__(self, k: int) -> ImplicitEquation:
        if k not in self._cache:
            E = self.family(k)
            if E.realization is not self.realization and repr(E.realization) != repr(self.realization):
                raise DimensionMismatchError(f"E_{k} lives on {E.realization.name}, not {self.realization.name}")
            self._cache[k] = E
        return self._cache[k]

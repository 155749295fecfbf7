"""Abstract groupoid realization: the five structural maps in a fixed chart."""

from abc import ABC, abstractmethod
from typing import List, Optional, Sequence

import numpy as np

from ..numkernel import AffineMap, DualScalar, real
from ..utils.errors import DimensionMismatchError, NotComposableError

COMPOSABLE_TOL = 1e-10


def pack(values: Sequence):
    """Float ndarray for real data; plain list when dual numbers are present."""
    values = list(values)
    if any(isinstance(v, DualScalar) for v in values):
        return values
    return np.array(values, dtype=float)


class GroupoidRealization(ABC):
    """Concrete (alpha, beta, m, epsilon, i) on coordinate vectors.

    Every map is generic over floats and dual numbers so that Lagrangians and
    residuals built on top of it can be differentiated. The alpha-fiber chart
    ``element_with_source(x, u)`` / ``fiber_coordinates(g)`` parametrizes the
    elements with a prescribed source, which is how successor solves keep
    ``alpha(h) = beta(g)`` by construction.
    """

    name: str = "groupoid"
    element_dim: int
    base_dim: int
    is_affine: bool = False

    # Structural maps

    @abstractmethod
    def source(self, g):
        """alpha(g)."""

    @abstractmethod
    def target(self, g):
        """beta(g)."""

    @abstractmethod
    def multiply(self, g, h):
        """m(g, h) without the composability check."""

    @abstractmethod
    def identity(self, x):
        """epsilon(x)."""

    @abstractmethod
    def inverse(self, g):
        """i(g)."""

    # Alpha-fiber chart

    @property
    @abstractmethod
    def fiber_dim(self) -> int:
        """Dimension of an alpha-fiber."""

    @abstractmethod
    def element_with_source(self, x, u):
        """Element with source x and fiber coordinates u."""

    @abstractmethod
    def fiber_coordinates(self, g):
        """Inverse of element_with_source for fixed alpha(g)."""

    def default_successor_fiber(self, g):
        """Newton seed for a successor of g: repeat g's own fiber coordinates."""
        return self.fiber_coordinates(g)

    def identity_fiber(self, x):
        return self.fiber_coordinates(self.identity(x))

    # Affine charts

    @property
    def source_map(self) -> Optional[AffineMap]:
        """alpha as an AffineMap when the chart makes it affine."""
        return None

    @property
    def target_map(self) -> Optional[AffineMap]:
        return None

    def cotangent(self) -> 'GroupoidRealization':
        """The cotangent groupoid T*G over A*G."""
        raise NotImplementedError(f"{self.name} has no cotangent realization")

    @property
    def coordinate_names(self) -> List[str]:
        return [f"g{i + 1}" for i in range(self.element_dim)]

    # Composition

    def check_element(self, g) -> None:
        if len(g) != self.element_dim:
            raise DimensionMismatchError(
                f"{self.name} elements have {self.element_dim} coordinates, got {len(g)}")

    def mismatch(self, g, h) -> float:
        """Infinity-norm of beta(g) - alpha(h)."""
        if self.base_dim == 0:
            return 0.0
        b = np.array([real(v) for v in self.target(g)])
        a = np.array([real(v) for v in self.source(h)])
        return float(np.max(np.abs(b - a)))

    def is_composable(self, g, h, tol: float = COMPOSABLE_TOL) -> bool:
        if self.base_dim == 0:
            return True
        scale = max(1.0, max(abs(real(v)) for v in self.target(g)))
        return self.mismatch(g, h) <= tol * scale

    def compose(self, g, h, tol: float = COMPOSABLE_TOL):
        """g * h, raising NotComposableError unless beta(g) = alpha(h)."""
        self.check_element(g)
        self.check_element(h)
        if not self.is_composable(g, h, tol):
            raise NotComposableError(self.mismatch(g, h))
        return self.multiply(g, h)

    # Sampling (tests and classification seeds)

    def random_base(self, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        return rng.uniform(-scale, scale, size=self.base_dim)

    def random_fiber(self, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        return rng.uniform(-scale, scale, size=self.fiber_dim)

    def random_element(self, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        return pack(self.element_with_source(self.random_base(rng, scale),
                                             self.random_fiber(rng, scale)))

    def random_successor(self, g, rng: np.random.Generator, scale: float = 2.0) -> np.ndarray:
        """Random h composable with g."""
        return pack(self.element_with_source(self.target(g), self.random_fiber(rng, scale)))

    def __repr__(self):
        return f"{type(self).__name__}()"


def compose(G: GroupoidRealization, g, h, tol: float = COMPOSABLE_TOL):
    """Product g * h in G; NOT_COMPOSABLE carries the mismatch ||beta(g) - alpha(h)||."""
    return G.compose(g, h, tol)


def cotangent_source_target(CT: GroupoidRealization, element):
    """(alpha~(element), beta~(element)) of a cotangent realization."""
    CT.check_element(element)
    return CT.source(element), CT.target(element)

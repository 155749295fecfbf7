"""Discrete Lagrangian mechanics package initialization."""

from .discrete import DiscreteLagrangian, LagrangianSet, LegendreValue, Side
from .catalog import free_particle, quadratic_lagrangian, midpoint_oscillator, singular_lagrangian, CATALOG
from .hamiltonian import (
    HamiltonianSystem, canonical_symplectic, hamiltonian_flow, flow_map, flow_lagrangian_set,
)

__all__ = [
    'DiscreteLagrangian', 'LagrangianSet', 'LegendreValue', 'Side',
    'free_particle', 'quadratic_lagrangian', 'midpoint_oscillator', 'singular_lagrangian', 'CATALOG',
    'HamiltonianSystem', 'canonical_symplectic', 'hamiltonian_flow', 'flow_map', 'flow_lagrangian_set',
]

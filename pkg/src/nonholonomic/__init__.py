"""Nonholonomic mechanics package initialization."""

from .system import (
    ConstraintDistribution, ConstraintManifold, NonholonomicSystem, MC_MEMBERSHIP_TOL,
)
from .sleigh import (
    SleighParams, inertia_matrix, sleigh_trace_lagrangian, sleigh_lagrangian, sleigh_manifold,
    sleigh_distribution, sleigh_system, sleigh_closed_form_maps, sleigh_momenta, suslov_residual,
)

__all__ = [
    'ConstraintDistribution', 'ConstraintManifold', 'NonholonomicSystem', 'MC_MEMBERSHIP_TOL',
    'SleighParams', 'inertia_matrix', 'sleigh_trace_lagrangian', 'sleigh_lagrangian',
    'sleigh_manifold', 'sleigh_distribution', 'sleigh_system', 'sleigh_closed_form_maps',
    'sleigh_momenta', 'suslov_residual',
]

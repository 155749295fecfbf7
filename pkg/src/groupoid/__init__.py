"""Groupoid realizations package initialization."""

from .base import (
    GroupoidRealization, compose, cotangent_source_target, pack, COMPOSABLE_TOL,
)
from .pair import PairGroupoid, CotangentPairGroupoid
from .se2 import (
    SE2Group, CotangentSE2,
    se2_exp, se2_log, se2_hat, se2_vee, se2_bracket, se2_to_matrix, se2_from_matrix, wrap_angle,
)

__all__ = [
    'GroupoidRealization', 'compose', 'cotangent_source_target', 'pack', 'COMPOSABLE_TOL',
    'PairGroupoid', 'CotangentPairGroupoid',
    'SE2Group', 'CotangentSE2',
    'se2_exp', 'se2_log', 'se2_hat', 'se2_vee', 'se2_bracket', 'se2_to_matrix',
    'se2_from_matrix', 'wrap_angle',
]

"""Linear DAE finite differencing package initialization."""

from .system import LinearDAE, left_annihilator
from .euler import (
    DAEStepReport, DAEIntegration,
    constraint_set, euler_step, consistent_initialize, integrate, as_sequence,
)

__all__ = [
    'LinearDAE', 'left_annihilator',
    'DAEStepReport', 'DAEIntegration',
    'constraint_set', 'euler_step', 'consistent_initialize', 'integrate', 'as_sequence',
]

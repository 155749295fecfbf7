"""Utils package initialization."""

from .config import Config
from . import console
from .errors import (
    GroupoidFlowError, ConfigError, DimensionMismatchError, ExprSyntaxError, UnboundVariableError,
    NumericalError, ConvergenceError, SingularError, HigherIndexError, InconsistentError,
    NotComposableError, DomainError, NotOnConstraintError, NonFiniteError,
    IncompleteResultError, NotStabilizedError, InconclusiveError,
)

__all__ = [
    'Config', 'console',
    'GroupoidFlowError', 'ConfigError', 'DimensionMismatchError', 'ExprSyntaxError',
    'UnboundVariableError', 'NumericalError', 'ConvergenceError', 'SingularError',
    'HigherIndexError', 'InconsistentError', 'NotComposableError', 'DomainError',
    'NotOnConstraintError', 'NonFiniteError', 'IncompleteResultError', 'NotStabilizedError',
    'InconclusiveError',
]

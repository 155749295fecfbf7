"""Exception hierarchy shared by the library and the command-line front end."""

from typing import Iterable, Optional


class GroupoidFlowError(Exception):
    """Base class for every error raised by groupoid-flow."""

    exit_code: int = 1


# Configuration problems (exit code 2)

class ConfigError(GroupoidFlowError):
    """Run configuration could not be loaded or validated."""

    exit_code = 2


class DimensionMismatchError(GroupoidFlowError, ValueError):
    """Operands have incompatible shapes."""

    exit_code = 2


class ExprSyntaxError(ConfigError):
    """Expression source text could not be parsed."""

    def __init__(self, message: str, offset: int, expected: Iterable[str] = ()):
        self.offset = offset
        self.expected = sorted(set(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnboundVariableError(ConfigError):
    """An expression references a name without a binding."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unbound variable '{name}'")


# Numerical failures (exit code 3)

class NumericalError(GroupoidFlowError):
    """A numerical procedure could not produce a valid result."""

    exit_code = 3


class ConvergenceError(NumericalError):
    """Gauss-Newton did not reach the residual tolerance (FAILURE)."""

    def __init__(self, message: str, residual_norm: float = float('nan')):
        self.residual_norm = residual_norm
        super().__init__(f"{message} (last residual {residual_norm:.3e})")


class SingularError(NumericalError):
    """A regularity Jacobian is numerically singular (SINGULAR)."""

    def __init__(self, message: str, smallest_singular_value: float = 0.0):
        self.smallest_singular_value = smallest_singular_value
        super().__init__(f"{message} (smallest singular value {smallest_singular_value:.3e})")


class HigherIndexError(NumericalError):
    """The combined DAE step matrix is singular (HIGHER_INDEX)."""

    def __init__(self, message: str, rank: Optional[int] = None, size: Optional[int] = None):
        self.rank = rank
        self.size = size
        super().__init__(f"{message} (rank {rank} of {size})")


class InconsistentError(NumericalError):
    """A constraint set that must be nonempty is EMPTY (INCONSISTENT)."""


class NotComposableError(NumericalError):
    """Two groupoid elements do not satisfy beta(g) = alpha(h)."""

    def __init__(self, mismatch: float):
        self.mismatch = mismatch
        super().__init__(f"Elements are not composable (mismatch {mismatch:.3e})")


class DomainError(NumericalError):
    """Input lies outside the domain of a map or function."""


class NotOnConstraintError(NumericalError):
    """Group element is not on the nonholonomic constraint manifold (NOT_ON_MC)."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"Element is not on the constraint manifold (residual {residual:.3e})")


class NonFiniteError(NumericalError, ValueError):
    """NaN or Inf entries where finite values are required."""


# Incomplete results (exit code 4)

class IncompleteResultError(GroupoidFlowError):
    """A procedure ended without a definite answer."""

    exit_code = 4


class NotStabilizedError(IncompleteResultError):
    """Constraint chain did not reach a fixed point within max_iter."""


class InconclusiveError(IncompleteResultError):
    """All feasibility seeds failed with a small but nonzero residual."""

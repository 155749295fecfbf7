"""Tolerance policy shared by every numerical decision."""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

from ..utils.config import Config


@dataclass(frozen=True)
class TolerancePolicy:
    """Scale-free tolerances for rank decisions, Newton solves and set equality."""

    rank_rel_tol: float = Config.RANK_REL_TOL
    newton_tol: float = Config.NEWTON_TOL
    newton_max_iter: int = Config.NEWTON_MAX_ITER
    set_eq_tol: float = Config.SET_EQ_TOL

    def __post_init__(self):
        for name in ('rank_rel_tol', 'newton_tol', 'newton_max_iter', 'set_eq_tol'):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"Tolerance '{name}' must be strictly positive, got {value}")

    def updated(self, overrides: Optional[Dict[str, Any]] = None) -> 'TolerancePolicy':
        """Copy with selected fields replaced."""
        if not overrides:
            return self
        return replace(self, **overrides)


DEFAULT_TOLERANCES = TolerancePolicy()

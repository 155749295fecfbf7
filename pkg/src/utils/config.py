"""Configuration management for groupoid-flow."""

import os
from pathlib import Path
from dotenv import load_dotenv

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent.parent

# Load environment variables from project root
load_dotenv(PROJECT_ROOT / '.env')

OUTPUT_DIR = PROJECT_ROOT / "outputs"
CONFIG_DIR = PROJECT_ROOT / "configs"


class Config:
    """Application configuration."""

    # Numerical tolerances (defaults of TolerancePolicy)
    RANK_REL_TOL: float = float(os.getenv("GROUPOID_FLOW_RANK_TOL", "1e-9"))
    NEWTON_TOL: float = float(os.getenv("GROUPOID_FLOW_NEWTON_TOL", "1e-10"))
    NEWTON_MAX_ITER: int = int(os.getenv("GROUPOID_FLOW_NEWTON_MAX_ITER", "50"))
    SET_EQ_TOL: float = float(os.getenv("GROUPOID_FLOW_SET_EQ_TOL", "1e-8"))

    # Pointwise classification
    CLASSIFY_SEEDS: int = int(os.getenv("GROUPOID_FLOW_SEEDS", "8"))
    SEED_BOX: float = float(os.getenv("GROUPOID_FLOW_SEED_BOX", "2.0"))
    INCONCLUSIVE_RESIDUAL: float = 1e-4

    # Hamiltonian flow integration
    FLOW_STEPS: int = int(os.getenv("GROUPOID_FLOW_FLOW_STEPS", "200"))

    # Output
    CSV_SCHEMA_VERSION: str = "v1"
    VERBOSE: bool = os.getenv("GROUPOID_FLOW_VERBOSE", "0") not in ("", "0", "false", "False")

    @classmethod
    def validate(cls) -> bool:
        """Check that all numeric settings are strictly positive."""
        invalid = [
            name for name in ("RANK_REL_TOL", "NEWTON_TOL", "NEWTON_MAX_ITER", "SET_EQ_TOL",
                              "CLASSIFY_SEEDS", "SEED_BOX", "FLOW_STEPS")
            if not getattr(cls, name) > 0
        ]
        return not invalid

    @classmethod
    def tolerances(cls):
        """Default tolerance policy built from the environment."""
        from ..numkernel.tolerance import TolerancePolicy
        return TolerancePolicy(
            rank_rel_tol=cls.RANK_REL_TOL,
            newton_tol=cls.NEWTON_TOL,
            newton_max_iter=cls.NEWTON_MAX_ITER,
            set_eq_tol=cls.SET_EQ_TOL,
        )

    @classmethod
    def set_verbose(cls, verbose: bool):
        cls.VERBOSE = bool(verbose)

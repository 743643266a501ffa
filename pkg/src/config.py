"""
Configuration module for the symplectic Quot toolkit
Centralizes truncation, sampling and logging settings
"""

# Importing dependencies.
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

env_path = Path(__file__).resolve().parent.parent / ".env"
load_dotenv(dotenv_path=env_path)

logger = logging.getLogger(__name__)


def _env_int(name: str, default: Optional[int] = None) -> Optional[int]:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r, using %s", name, raw, default)
        return default


class Config:
    # ----Truncation----
    # Override for the jet truncation order. The default order for a point
    # with invariants (r, d) is 2rd + 1; a larger value must not change any result.
    MAX_K: Optional[int] = _env_int("SYMPQUOT_MAX_K")

    # ----Sampling----
    ## Random integer entries are drawn from [-B, B].
    SAMPLE_BOUND: int = _env_int("SYMPQUOT_SAMPLE_BOUND", 10)

    ## Highest power of t used in random jet perturbations.
    JET_DEGREE: int = _env_int("SYMPQUOT_JET_DEGREE", 2)

    # ----System Settings----
    # Worker threads for independent harness cells.
    WORKERS: int = _env_int("SYMPQUOT_WORKERS", 4)

    LOG_LEVEL: str = os.getenv("SYMPQUOT_LOG_LEVEL", "WARNING")

    TOOL_VERSION: str = os.getenv("TOOL_VERSION", "0.1.0")

    @classmethod
    def truncation_order(cls, r: int, d: int) -> int:
        """
        Truncation order K used for points with invariants (r, d).

        Args:
            r: half rank of the symplectic bundle
            d: degree of the divisor

        Returns:
            int: max(2rd + 1, SYMPQUOT_MAX_K)
        """
        base = 2 * r * d + 1
        if cls.MAX_K is None:
            return base
        if cls.MAX_K < base:
            logger.warning(
                "SYMPQUOT_MAX_K=%d is below the safe order %d for r=%d, d=%d; using %d",
                cls.MAX_K, base, r, d, base,
            )
            return base
        return cls.MAX_K

    @classmethod
    def validate(cls) -> bool:
        """
        Validates the numeric settings.

        Returns:
            bool: True if configuration is valid, False otherwise
        """
        valid = True
        if cls.SAMPLE_BOUND < 1:
            logger.warning("SYMPQUOT_SAMPLE_BOUND must be positive, got %d", cls.SAMPLE_BOUND)
            valid = False
        if cls.JET_DEGREE < 0:
            logger.warning("SYMPQUOT_JET_DEGREE must be non-negative, got %d", cls.JET_DEGREE)
            valid = False
        if cls.WORKERS < 1:
            logger.warning("SYMPQUOT_WORKERS must be positive, got %d", cls.WORKERS)
            valid = False
        return valid

    @classmethod
    def describe(cls) -> Dict[str, Any]:
        return {
            "max_k": cls.MAX_K,
            "sample_bound": cls.SAMPLE_BOUND,
            "jet_degree": cls.JET_DEGREE,
            "workers": cls.WORKERS,
            "log_level": cls.LOG_LEVEL,
            "tool_version": cls.TOOL_VERSION,
        }


# Validate configurations on import.
if __name__ != "__main__":
    Config.validate()

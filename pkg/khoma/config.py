"""
Engine settings loaded from the environment
"""
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class EngineSettings(BaseModel):
    """Limits and switches that govern the exponential code paths"""
    max_crossings: int = Field(default=16, ge=0, description="Hard crossing limit for exponential operations")
    warn_crossings: int = Field(default=20, ge=0, description="State sums log a warning above this many crossings")
    max_coloring_arcs: int = Field(default=24, ge=0, description="Arc limit for admissible coloring enumeration")
    debug_mode: bool = Field(default=False, description="Log at DEBUG level")


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return int(value)


def get_settings() -> EngineSettings:
    """
    Read the settings from the current process environment

    Returns:
        A validated EngineSettings instance
    """
    return EngineSettings(
        max_crossings=_env_int("KHOMA_MAX_CROSSINGS", 16),
        warn_crossings=_env_int("KHOMA_WARN_CROSSINGS", 20),
        max_coloring_arcs=_env_int("KHOMA_MAX_COLORING_ARCS", 24),
        debug_mode=os.getenv("DEBUG_MODE", "false").lower() == "true",
    )


def load_settings(dotenv_path: Optional[str] = None) -> EngineSettings:
    """
    Load a .env file (if present) into the environment, then read the settings

    Args:
        dotenv_path: Explicit .env location; the default search is used when None

    Returns:
        A validated EngineSettings instance
    """
    load_dotenv(dotenv_path)
    return get_settings()

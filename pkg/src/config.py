"""
Run configuration for the command line.

Values come from, in increasing priority: field defaults, a .env file,
the RICCATI_GRID environment variable, explicit overrides.
"""
import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

from .core.grid import DEFAULT_GRID_POINTS
from .oracle.containment import DEFAULT_CONTAINMENT_TOL, DEFAULT_SEEDS
from .oracle.integrate import DEFAULT_ORACLE_TOL, MAX_TOL, MIN_TOL

GRID_ENV = "RICCATI_GRID"
MIN_GRID = 64
MIN_SEEDS = 4


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: str = "turning_point"
    variant: Optional[str] = None
    grid_size: int = Field(DEFAULT_GRID_POINTS, ge=MIN_GRID)
    seeds: int = Field(DEFAULT_SEEDS, ge=MIN_SEEDS)
    containment_tol: float = Field(DEFAULT_CONTAINMENT_TOL, gt=0)
    oracle_tol: float = Field(DEFAULT_ORACLE_TOL, ge=MIN_TOL, le=MAX_TOL)
    output_format: Literal["csv", "json"] = "csv"
    output: Optional[str] = None
    workers: int = Field(1, ge=1)


def load_run_config(env_file: Optional[str] = None, **overrides) -> RunConfig:
    load_dotenv(env_file)
    values = {}
    grid = os.getenv(GRID_ENV)
    if grid:
        try:
            values["grid_size"] = int(grid)
        except ValueError:
            raise ValueError(f"{GRID_ENV} must be an integer, got {grid!r}")
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)

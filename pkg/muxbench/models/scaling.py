"""
Configuration and result schemas of the scaling models
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from muxbench.models.hardware import CouplingMap
from muxbench.models.reports import FitResult


class ToyModelConfig(BaseModel):
    """Layered random-gate model on a grid, times in units of the 1q gate time."""
    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    grid: CouplingMap
    depth: int = Field(ge=1)
    p1: float = Field(ge=0.0, le=1.0)
    p2: float = Field(ge=0.0, le=1.0)
    t2: float = Field(ge=1.0)
    k: int = Field(default=1, ge=1)
    seed: int = 0
    # how a layer without 2q gates is timed: busiest switch or all 1q gates in sequence
    no2q_branch: Literal["per_switch", "total"] = "per_switch"


class ToyModelResult(BaseModel):
    k: int
    mean_factor: float
    std_factor: float
    trials: int


class QueueModel(BaseModel):
    """k clients with independent exponential waiting times of rate eta."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    eta: float = Field(gt=0.0)
    k: int = Field(ge=1)
    trials: int = Field(default=100_000, ge=1)
    seed: int = 0


class QueueEstimate(BaseModel):
    k: int
    eta: float
    mc_mean: float
    stderr: float
    analytic: float
    trials: int

    @property
    def z_score(self) -> float:
        if self.stderr == 0:
            return 0.0
        return (self.mc_mean - self.analytic) / self.stderr


class ToySweep(BaseModel):
    """Overhead factor per k plus the log and linear fits of factor - 1."""
    rows: List[ToyModelResult] = Field(default_factory=list)
    fit: Optional[FitResult] = None


class QueueSweep(BaseModel):
    rows: List[QueueEstimate] = Field(default_factory=list)

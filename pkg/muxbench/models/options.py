"""
Option schemas for circuit generation, grouping and serialization
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class OrderHeuristic(str, Enum):
    """Ordering of single-qubit gates sharing a switch within a layer."""
    BY_INDEX = "by_index"
    DISTANCE_TO_NEXT_2Q = "distance_to_next_2q"

    @classmethod
    def from_flag(cls, value: str) -> "OrderHeuristic":
        aliases = {"index": cls.BY_INDEX, "dist2q": cls.DISTANCE_TO_NEXT_2Q}
        return aliases.get(value) or cls(value)


class GroupingStrategy(str, Enum):
    """How qubits are assigned to shared switches."""
    TRIVIAL = "trivial"
    RANDOM = "random"
    CLUSTERED = "clustered"
    DISPERSED = "dispersed"


class SerializerOptions(BaseModel):
    """Serializer behaviour."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    order_heuristic: OrderHeuristic = OrderHeuristic.DISTANCE_TO_NEXT_2Q
    hide_delays: bool = True
    t_sw_ns: Optional[int] = Field(default=None, ge=0)


class RandomCircuitConfig(BaseModel):
    """Parameters of the random benchmark generator."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=1)
    num_gates: int = Field(ge=0)
    w1: float = Field(default=0.7, ge=0.0, le=1.0)
    w2: float = Field(default=0.3, ge=0.0, le=1.0)
    seed: int = 0

    @model_validator(mode="after")
    def check_weights(self) -> "RandomCircuitConfig":
        if abs(self.w1 + self.w2 - 1.0) > 1e-9:
            raise ValueError("w1 + w2 must equal 1")
        return self

"""
Run manifest schema
"""
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


class RunManifest(BaseModel):
    """Provenance of one CLI run: parameters, seeds, inputs and outputs."""
    model_config = ConfigDict(extra="forbid")

    command: str
    version: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seeds: List[int] = Field(default_factory=list)
    # path -> sha256
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)

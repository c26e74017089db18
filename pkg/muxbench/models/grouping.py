"""
Coupler and switch grouping schemas
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from muxbench.models.hardware import CouplingMap, Edge, normalize_edge
from muxbench.utils.error_handlers import StorageError, ValidationError


class CouplerGrouping(BaseModel):
    """Partition of the couplers into groups driven by one shared line each."""
    model_config = ConfigDict(frozen=True)

    groups: List[List[Tuple[int, int]]]
    centers: List[int] = Field(default_factory=list)
    minimal: bool = True

    @model_validator(mode="after")
    def normalize(self) -> "CouplerGrouping":
        for group in self.groups:
            if not group:
                raise ValueError("Coupler groups must be non-empty")
        return self

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def edge_to_group(self) -> Dict[Edge, int]:
        mapping: Dict[Edge, int] = {}
        for index, group in enumerate(self.groups):
            for a, b in group:
                mapping[normalize_edge(a, b)] = index
        return mapping

    def validate_against(self, coupling: CouplingMap) -> None:
        """Every coupler in exactly one group."""
        seen: Dict[Edge, int] = {}
        for index, group in enumerate(self.groups):
            for a, b in group:
                edge = normalize_edge(a, b)
                if edge not in coupling.edges:
                    raise ValidationError(f"Coupler {edge} is not in the coupling map", field="groups")
                if edge in seen:
                    raise ValidationError(f"Coupler {edge} appears in groups {seen[edge]} and {index}", field="groups")
                seen[edge] = index
        missing = coupling.edges - set(seen)
        if missing:
            raise ValidationError(f"Couplers without a group: {sorted(missing)[:5]}", field="groups")

    def to_json(self) -> str:
        groups = [[list(e) for e in sorted(normalize_edge(a, b) for a, b in g)] for g in self.groups]
        return json.dumps({"groups": groups}, sort_keys=True)


class SwitchGrouping(BaseModel):
    """Partition of the qubits into switch groups of size k or k-1."""
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    n: int = Field(ge=1)
    groups: List[List[int]]
    strategy: str = "trivial"
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_partition(self) -> "SwitchGrouping":
        members = sorted(q for g in self.groups for q in g)
        if members != list(range(self.n)):
            raise ValueError(f"Groups must partition qubits 0..{self.n - 1}")
        if len(self.groups) != math.ceil(self.n / self.k):
            raise ValueError(f"Expected {math.ceil(self.n / self.k)} groups for n={self.n}, k={self.k}")
        sizes = [len(g) for g in self.groups]
        if max(sizes) > self.k or max(sizes) - min(sizes) > 1:
            raise ValueError(f"Unbalanced group sizes {sorted(set(sizes))} for k={self.k}")
        return self

    @property
    def m(self) -> int:
        return len(self.groups)

    @property
    def group_of(self) -> List[int]:
        owner = [0] * self.n
        for index, group in enumerate(self.groups):
            for q in group:
                owner[q] = index
        return owner

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "groups": [sorted(g) for g in self.groups]}, sort_keys=True)


def write_grouping(grouping: Union[CouplerGrouping, SwitchGrouping], path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.write_text(grouping.to_json() + "\n", encoding="utf-8")
    except OSError as e:
        raise StorageError(f"Cannot write grouping: {e}", path=str(path))
    return path

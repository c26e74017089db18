"""
Hardware description: connectivity, native gate durations and switch timing.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from muxbench.models.circuit import GATE_TABLE, GateClass
from muxbench.utils.error_handlers import UnsupportedGateError, ValidationError

Edge = Tuple[int, int]


def normalize_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CouplingMap:
    """Undirected qubit connectivity graph."""
    n: int
    edges: FrozenSet[Edge]
    name: str = "custom"
    coords: Optional[Tuple[Tuple[int, int], ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError("Coupling map needs at least one qubit", field="n")
        normalized = set()
        for a, b in self.edges:
            if a == b:
                raise ValidationError(f"Self-loop on qubit {a}", field="edges")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValidationError(f"Edge ({a}, {b}) outside [0, {self.n})", field="edges")
            normalized.add(normalize_edge(a, b))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.coords is not None and len(self.coords) != self.n:
            raise ValidationError("Coordinate list length must equal n", field="coords")

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances; unreachable pairs are inf."""
        return nx.floyd_warshall_numpy(self.graph, nodelist=list(range(self.n)))

    @cached_property
    def neighbors(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.graph.neighbors(q))) for q in range(self.n))

    def degree(self, q: int) -> int:
        return len(self.neighbors[q])

    def has_edge(self, a: int, b: int) -> bool:
        return normalize_edge(a, b) in self.edges

    def shortest_path(self, a: int, b: int) -> List[int]:
        return nx.shortest_path(self.graph, a, b)

    def is_connected(self) -> bool:
        return nx.is_connected(self.graph)

    def diameter(self) -> int:
        finite = self.distance_matrix[np.isfinite(self.distance_matrix)]
        return int(finite.max()) if finite.size else 0


@dataclass(frozen=True)
class HardwareSpec:
    """Coupling map plus native gate durations in ns."""
    name: str
    coupling: CouplingMap
    native_1q: Mapping[str, int] = field(hash=False)
    native_2q: Mapping[str, int] = field(hash=False)
    virtual: FrozenSet[str] = frozenset({"RZ"})
    t_sw_ns: int = 10

    def __post_init__(self) -> None:
        if not self.native_1q:
            raise ValidationError("At least one native single-qubit gate is required", field="gates")
        if not self.native_2q:
            raise ValidationError("At least one native two-qubit gate is required", field="gates")
        for name, ns in {**self.native_1q, **self.native_2q}.items():
            if name not in GATE_TABLE:
                raise UnsupportedGateError(name, self.name)
            if ns <= 0:
                raise ValidationError(f"Duration of {name} must be positive", field="gates")
        for name in self.native_1q:
            if GATE_TABLE[name][1] is not GateClass.SINGLE_PHYSICAL:
                raise ValidationError(f"{name} is not a single-qubit physical gate", field="gates")
        for name in self.native_2q:
            if GATE_TABLE[name][1] is not GateClass.TWO_PHYSICAL:
                raise ValidationError(f"{name} is not a two-qubit physical gate", field="gates")
        for name in self.virtual:
            if GATE_TABLE.get(name, (0, None))[1] is not GateClass.VIRTUAL:
                raise ValidationError(f"{name} cannot be executed virtually", field="virtual")
        if self.t_sw_ns < 0:
            raise ValidationError("Switch time must be non-negative", field="t_sw_ns")
        if not self.t_sw_ns < self.t_1q <= self.t_2q:
            raise ValidationError(
                f"Duration hierarchy t_sw < t_1q <= t_2q violated "
                f"({self.t_sw_ns} / {self.t_1q} / {self.t_2q} ns)",
                field="gates",
            )

    @property
    def n(self) -> int:
        return self.coupling.n

    @property
    def t_1q(self) -> int:
        return min(self.native_1q.values())

    @property
    def t_2q(self) -> int:
        return min(self.native_2q.values())

    def is_native(self, name: str) -> bool:
        return name in self.native_1q or name in self.native_2q or name in self.virtual

    def duration_of(self, name: str) -> int:
        """Duration of a gate on this hardware; zero-time for virtual, meta and SW."""
        if name in self.native_1q:
            return self.native_1q[name]
        if name in self.native_2q:
            return self.native_2q[name]
        if name in self.virtual or name in ("SW", "MEASURE", "BARRIER"):
            return 0
        if name == "SDEL":
            return self.t_sw_ns
        raise UnsupportedGateError(name, self.name)

    def with_t_sw(self, t_sw_ns: int) -> "HardwareSpec":
        return replace(self, t_sw_ns=t_sw_ns)

    def with_two_qubit_ratio(self, ratio: float) -> "HardwareSpec":
        """Copy whose two-qubit gates all last ``ratio`` times the shortest 1q gate."""
        if ratio < 1:
            raise ValidationError("Two-qubit/one-qubit duration ratio must be >= 1", field="ratio")
        ns = int(round(ratio * self.t_1q))
        return replace(
            self,
            name=f"{self.name}-r{ratio:g}",
            native_2q={name: ns for name in self.native_2q},
        )


class GateEntry(BaseModel):
    """Duration record of one native gate in a hardware JSON file."""
    model_config = ConfigDict(extra="forbid")

    arity: int = Field(ge=1, le=2)
    ns: int = Field(gt=0)


class HardwareSpecDocument(BaseModel):
    """JSON file format of a hardware spec."""
    model_config = ConfigDict(extra="forbid")

    name: str = "custom"
    n: int = Field(ge=1)
    edges: List[Tuple[int, int]]
    gates: Dict[str, GateEntry]
    virtual: List[str] = Field(default_factory=lambda: ["RZ"])
    t_sw_ns: int = Field(default=10, ge=0)

    @field_validator("gates")
    @classmethod
    def upper_gate_names(cls, v: Dict[str, GateEntry]) -> Dict[str, GateEntry]:
        return {name.upper(): entry for name, entry in v.items()}

    def to_spec(self) -> HardwareSpec:
        coupling = CouplingMap(self.n, frozenset(tuple(e) for e in self.edges), name=self.name)
        for name, entry in self.gates.items():
            if name in GATE_TABLE and GATE_TABLE[name][0] != entry.arity:
                raise ValidationError(f"Gate {name} declared with arity {entry.arity}", field="gates")
        return HardwareSpec(
            name=self.name,
            coupling=coupling,
            native_1q={k: e.ns for k, e in self.gates.items() if e.arity == 1},
            native_2q={k: e.ns for k, e in self.gates.items() if e.arity == 2},
            virtual=frozenset(v.upper() for v in self.virtual),
            t_sw_ns=self.t_sw_ns,
        )

    @classmethod
    def from_spec(cls, spec: HardwareSpec) -> "HardwareSpecDocument":
        gates = {k: GateEntry(arity=1, ns=v) for k, v in sorted(spec.native_1q.items())}
        gates.update({k: GateEntry(arity=2, ns=v) for k, v in sorted(spec.native_2q.items())})
        return cls(
            name=spec.name,
            n=spec.n,
            edges=spec.coupling.sorted_edges,
            gates=gates,
            virtual=sorted(spec.virtual),
            t_sw_ns=spec.t_sw_ns,
        )

"""
Circuit intermediate representation.

Gates are immutable values; a circuit is an ordered tuple of gate instances over
``n`` qubit wires. Durations are integer nanoseconds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Sequence, Tuple

from muxbench.utils.error_handlers import UnsupportedGateError, ValidationError

if TYPE_CHECKING:
    from muxbench.models.hardware import HardwareSpec


class GateClass(str, Enum):
    """Timing class of a gate."""
    SINGLE_PHYSICAL = "single_physical"
    TWO_PHYSICAL = "two_physical"
    VIRTUAL = "virtual"
    SWITCH_MARKER = "switch_marker"
    SWITCH_DELAY = "switch_delay"
    META = "meta"


# name -> (arity, class); arity 0 means "any number of qubits"
GATE_TABLE: Dict[str, Tuple[int, GateClass]] = {
    "H": (1, GateClass.SINGLE_PHYSICAL),
    "X": (1, GateClass.SINGLE_PHYSICAL),
    "SX": (1, GateClass.SINGLE_PHYSICAL),
    "RX": (1, GateClass.SINGLE_PHYSICAL),
    "RY": (1, GateClass.SINGLE_PHYSICAL),
    "RZ": (1, GateClass.VIRTUAL),
    "CX": (2, GateClass.TWO_PHYSICAL),
    "CZ": (2, GateClass.TWO_PHYSICAL),
    "SWAP": (2, GateClass.TWO_PHYSICAL),
    "ISWAP": (2, GateClass.TWO_PHYSICAL),
    "ECR": (2, GateClass.TWO_PHYSICAL),
    "SW": (2, GateClass.SWITCH_MARKER),
    "SDEL": (1, GateClass.SWITCH_DELAY),
    "MEASURE": (1, GateClass.META),
    "BARRIER": (0, GateClass.META),
}

PARAMETRIC_GATES = frozenset({"RX", "RY", "RZ"})
MUX_GATES = frozenset({"SW", "SDEL"})


@dataclass(frozen=True)
class GateKind:
    """A gate type: name, arity, timing class and angle parameters."""
    name: str
    arity: int
    gate_class: GateClass
    params: Tuple[float, ...] = ()

    @property
    def is_physical(self) -> bool:
        return self.gate_class in (GateClass.SINGLE_PHYSICAL, GateClass.TWO_PHYSICAL)

    @property
    def is_mux(self) -> bool:
        return self.gate_class in (GateClass.SWITCH_MARKER, GateClass.SWITCH_DELAY)


def gate_kind(name: str, params: Sequence[float] = (), arity: Optional[int] = None) -> GateKind:
    """Look up a gate kind by name.

    Args:
        name: Gate name, case-insensitive
        params: Rotation angles in radians
        arity: Qubit count, only needed for variadic gates (BARRIER)

    Returns:
        GateKind for the name
    """
    key = name.upper()
    if key not in GATE_TABLE:
        raise UnsupportedGateError(name, "circuit IR")

    table_arity, gate_class = GATE_TABLE[key]
    if table_arity == 0:
        if arity is None or arity < 1:
            raise ValidationError(f"{key} needs at least one qubit", field="qubits")
        table_arity = arity
    elif arity is not None and arity != table_arity:
        raise ValidationError(f"{key} acts on {table_arity} qubits, got {arity}", field="qubits")

    expected = 1 if key in PARAMETRIC_GATES else 0
    if len(params) != expected:
        raise ValidationError(f"{key} takes {expected} parameter(s), got {len(params)}", field="params")

    return GateKind(key, table_arity, gate_class, tuple(float(p) for p in params))


@dataclass(frozen=True)
class GateInstance:
    """One gate application in a circuit."""
    id: int
    kind: GateKind
    qubits: Tuple[int, ...]
    duration: int = 0
    tag: str = ""

    def __post_init__(self) -> None:
        if len(self.qubits) != self.kind.arity:
            raise ValidationError(
                f"{self.kind.name} expects {self.kind.arity} qubit(s), got {len(self.qubits)}",
                field="qubits",
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValidationError(f"{self.kind.name} repeats a qubit: {self.qubits}", field="qubits")
        if self.duration < 0:
            raise ValidationError("Gate duration must be non-negative", field="duration")

    @property
    def name(self) -> str:
        return self.kind.name

    @property
    def params(self) -> Tuple[float, ...]:
        return self.kind.params

    @property
    def gate_class(self) -> GateClass:
        return self.kind.gate_class

    @property
    def is_physical(self) -> bool:
        return self.kind.is_physical

    @property
    def is_single_physical(self) -> bool:
        return self.kind.gate_class is GateClass.SINGLE_PHYSICAL

    @property
    def is_two_physical(self) -> bool:
        return self.kind.gate_class is GateClass.TWO_PHYSICAL


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``n`` qubits."""
    n: int
    gates: Tuple[GateInstance, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError("Qubit count must be non-negative", field="n")
        seen = set()
        for gate in self.gates:
            if gate.id in seen:
                raise ValidationError(f"Duplicate gate id {gate.id}", field="gates")
            seen.add(gate.id)
            for q in gate.qubits:
                if not 0 <= q < self.n:
                    raise ValidationError(
                        f"Gate {gate.id} ({gate.name}) uses qubit {q} outside [0, {self.n})",
                        field="qubits",
                    )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def next_id(self) -> int:
        return max((g.id for g in self.gates), default=-1) + 1

    def count(self, gate_class: GateClass) -> int:
        return sum(1 for g in self.gates if g.gate_class is gate_class)


class CircuitBuilder:
    """Appends gates with sequential ids and spec-derived durations."""

    def __init__(self, n: int, spec: Optional["HardwareSpec"] = None, start_id: int = 0):
        self.n = n
        self.spec = spec
        self._next_id = start_id
        self._gates: List[GateInstance] = []

    def add(
        self,
        name: str,
        *qubits: int,
        params: Sequence[float] = (),
        tag: str = "",
        duration: Optional[int] = None,
    ) -> GateInstance:
        kind = gate_kind(name, params, arity=len(qubits))
        if duration is None:
            duration = self.spec.duration_of(kind.name) if self.spec is not None else 0
        gate = GateInstance(self._next_id, kind, tuple(qubits), duration, tag)
        self._next_id += 1
        self._gates.append(gate)
        return gate

    def extend(self, gates: Iterable[GateInstance]) -> None:
        for g in gates:
            self.add(g.name, *g.qubits, params=g.params, tag=g.tag)

    def build(self) -> Circuit:
        return Circuit(self.n, tuple(self._gates))


def physical_levels(circuit: Circuit) -> List[int]:
    """Layer index of every gate, in circuit order.

    A physical gate sits one layer after the latest physical gate on any of its
    wires; virtual, meta and mux gates inherit the layer of the wire frontier and
    never advance it.
    """
    frontier = [0] * circuit.n
    levels: List[int] = []
    for gate in circuit.gates:
        level = max((frontier[q] for q in gate.qubits), default=0)
        levels.append(level)
        if gate.is_physical:
            for q in gate.qubits:
                frontier[q] = level + 1
        else:
            for q in gate.qubits:
                frontier[q] = level
    return levels


def wire_sequences(circuit: Circuit) -> List[List[GateInstance]]:
    """Gates acting on each qubit, in wire order."""
    wires: List[List[GateInstance]] = [[] for _ in range(circuit.n)]
    for gate in circuit.gates:
        for q in gate.qubits:
            wires[q].append(gate)
    return wires


def _same_gate(a: GateInstance, b: GateInstance, atol: float) -> bool:
    if a.name != b.name or a.qubits != b.qubits or len(a.params) != len(b.params):
        return False
    return all(math.isclose(x, y, rel_tol=0.0, abs_tol=atol) for x, y in zip(a.params, b.params))


def structurally_equal(a: Circuit, b: Circuit, atol: float = 1e-9) -> bool:
    """Equal qubit count and equal per-wire gate sequences (name, qubits, params)."""
    if a.n != b.n or len(a.gates) != len(b.gates):
        return False
    for wire_a, wire_b in zip(wire_sequences(a), wire_sequences(b)):
        if len(wire_a) != len(wire_b):
            return False
        if not all(_same_gate(x, y, atol) for x, y in zip(wire_a, wire_b)):
            return False
    return True


def strip_mux_gates(circuit: Circuit) -> Circuit:
    """Drop every SW and SDEL gate."""
    return Circuit(circuit.n, tuple(g for g in circuit.gates if not g.kind.is_mux))

"""
Serialization of single-qubit gates that share a control switch.

Qubits in one switch group cannot receive single-qubit pulses at the same time.
Layer by layer, the gates of each group are put in a chain: a zero-time ``SW(a, b)``
marks the switch moving from qubit a to qubit b, and ``SDEL(b)`` models the
switch settling time before b's gate. Between layers the switch token is carried
with a bare ``SW``. The output is scheduled like any other circuit.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import structlog

from muxbench.models.circuit import (
    Circuit,
    GateInstance,
    gate_kind,
    physical_levels,
    wire_sequences,
)
from muxbench.models.grouping import SwitchGrouping
from muxbench.models.hardware import HardwareSpec
from muxbench.models.options import OrderHeuristic, SerializerOptions
from muxbench.processors.dag import asap_schedule, build_dag
from muxbench.processors.router import RoutedCircuit
from muxbench.utils.error_handlers import ValidationError

logger = structlog.get_logger()

NO_TWO_QUBIT_GATE = float("inf")


@dataclass(frozen=True)
class SerializedCircuit:
    """A routed circuit with switch gates inserted."""
    circuit: Circuit
    inserted_sw: int
    inserted_sdel: int
    duration: int
    base_duration: int
    hidden_sdel: int = 0

    @property
    def overhead_ns(self) -> int:
        return self.duration - self.base_duration


class SwitchSerializer:
    """Single forward pass over the layers of a routed circuit.

    Args:
        spec: Hardware the circuit was routed for
        grouping: Switch groups over the circuit's qubits
        options: Ordering heuristic, delay hiding and switch time override
    """

    def __init__(self, spec: HardwareSpec, grouping: SwitchGrouping, options: SerializerOptions):
        self.spec = spec
        self.grouping = grouping
        self.options = options
        self.t_sw = spec.t_sw_ns if options.t_sw_ns is None else options.t_sw_ns
        self.group_of = grouping.group_of

    def serialize(self, circuit: Circuit) -> SerializedCircuit:
        if circuit.n > self.grouping.n:
            raise ValidationError(
                f"Grouping covers {self.grouping.n} qubits, circuit uses {circuit.n}", field="grouping"
            )
        if any(g.kind.is_mux for g in circuit.gates):
            raise ValidationError("Circuit already contains switch gates", field="gates")

        base_duration = asap_schedule(build_dag(circuit)).total_duration
        if all(len(g) == 1 for g in self.grouping.groups):
            return SerializedCircuit(circuit, 0, 0, base_duration, base_duration)

        levels = physical_levels(circuit)
        level_of = {g.id: lvl for g, lvl in zip(circuit.gates, levels)}
        distance = self._distance_to_next_2q(circuit, level_of)

        layers: Dict[int, List[GateInstance]] = {}
        for gate, level in zip(circuit.gates, levels):
            layers.setdefault(level, []).append(gate)

        self._out: List[GateInstance] = []
        self._next_id = circuit.next_id
        self._wire_free = [0] * circuit.n
        self._last_physical: List[Optional[Tuple[GateInstance, int]]] = [None] * circuit.n
        holder: Dict[int, int] = {}
        sw_count = sdel_count = hidden = 0

        for level in sorted(layers):
            zero_time, two_qubit, chains = [], [], {}
            for gate in layers[level]:
                if gate.is_single_physical:
                    chains.setdefault(self.group_of[gate.qubits[0]], []).append(gate)
                elif gate.is_two_physical:
                    two_qubit.append(gate)
                else:
                    zero_time.append(gate)

            for gate in zero_time:
                self._emit(gate)

            ordered = {grp: self._order(chain, distance) for grp, chain in sorted(chains.items())}

            # switch token moving across layers
            for grp, chain in ordered.items():
                first = chain[0].qubits[0]
                if grp in holder and holder[grp] != first:
                    self._emit_switch(holder[grp], first)
                    sw_count += 1

            for gate in two_qubit:
                self._emit(gate)

            for grp, chain in ordered.items():
                prev: Optional[GateInstance] = None
                for gate in chain:
                    if prev is not None:
                        a, b = prev.qubits[0], gate.qubits[0]
                        skip_delay = self.options.hide_delays and self._delay_hidden(prev, b)
                        self._emit_switch(a, b)
                        sw_count += 1
                        if skip_delay:
                            hidden += 1
                        else:
                            self._emit_delay(b)
                            sdel_count += 1
                    self._emit(gate)
                    prev = gate
                holder[grp] = chain[-1].qubits[0]

        serialized = Circuit(circuit.n, tuple(self._out))
        duration = asap_schedule(build_dag(serialized)).total_duration
        logger.debug(
            "Serialized circuit",
            k=self.grouping.k,
            sw=sw_count,
            sdel=sdel_count,
            hidden=hidden,
            base_ns=base_duration,
            duration_ns=duration,
        )
        return SerializedCircuit(serialized, sw_count, sdel_count, duration, base_duration, hidden)

    def _order(self, chain: List[GateInstance], distance: Dict[int, float]) -> List[GateInstance]:
        if self.options.order_heuristic is OrderHeuristic.DISTANCE_TO_NEXT_2Q:
            return sorted(chain, key=lambda g: (distance[g.id], g.qubits[0]))
        return sorted(chain, key=lambda g: g.qubits[0])

    def _emit(self, gate: GateInstance) -> None:
        start = max((self._wire_free[q] for q in gate.qubits), default=0)
        finish = start + gate.duration
        for q in gate.qubits:
            self._wire_free[q] = finish
            if gate.is_physical:
                self._last_physical[q] = (gate, finish)
        self._out.append(gate)

    def _new_gate(self, name: str, qubits: Tuple[int, ...], duration: int) -> GateInstance:
        gate = GateInstance(self._next_id, gate_kind(name), qubits, duration)
        self._next_id += 1
        return gate

    def _emit_switch(self, a: int, b: int) -> None:
        self._emit(self._new_gate("SW", (a, b), 0))

    def _emit_delay(self, b: int) -> None:
        self._emit(self._new_gate("SDEL", (b,), self.t_sw))

    def _delay_hidden(self, prev: GateInstance, b: int) -> bool:
        """Whether a two-qubit gate on b runs through the whole settling time after prev.

        The same gap is required when a is also heading into a two-qubit gate: b's pulse
        may not start before the switch has settled.
        """
        last = self._last_physical[b]
        if last is None or not last[0].is_two_physical:
            return False
        released = self._wire_free[prev.qubits[0]]
        return last[1] >= released + self.t_sw

    @staticmethod
    def _distance_to_next_2q(circuit: Circuit, level_of: Dict[int, int]) -> Dict[int, float]:
        """Layers between each single-qubit gate and the next two-qubit gate on its wire."""
        distance: Dict[int, float] = {}
        for wire in wire_sequences(circuit):
            upcoming: Optional[int] = None
            for gate in reversed(wire):
                if gate.is_two_physical:
                    upcoming = level_of[gate.id]
                elif gate.is_single_physical:
                    distance[gate.id] = (
                        NO_TWO_QUBIT_GATE if upcoming is None else upcoming - level_of[gate.id]
                    )
        return distance


def serialize(
    routed: Union[RoutedCircuit, Circuit],
    grouping: SwitchGrouping,
    spec: HardwareSpec,
    options: Optional[SerializerOptions] = None,
) -> SerializedCircuit:
    """Insert switch gates so that no two qubits of a group pulse at once.

    Args:
        routed: Routed circuit
        grouping: Switch groups over the hardware's qubits
        spec: Hardware the circuit was routed for
        options: Serializer options; defaults to distance ordering with delay hiding

    Returns:
        SerializedCircuit with its ASAP duration and the routed baseline
    """
    circuit = routed.circuit if isinstance(routed, RoutedCircuit) else routed
    return SwitchSerializer(spec, grouping, options or SerializerOptions()).serialize(circuit)


def switch_exclusive(serialized: Circuit, grouping: SwitchGrouping) -> bool:
    """No two single-qubit pulses of one group overlap in the ASAP schedule."""
    schedule = asap_schedule(build_dag(serialized))
    group_of = grouping.group_of
    spans: Dict[int, List[Tuple[int, int]]] = {}
    for gate in serialized.gates:
        if gate.is_single_physical:
            spans.setdefault(group_of[gate.qubits[0]], []).append(
                (schedule.start[gate.id], schedule.finish[gate.id])
            )
    for intervals in spans.values():
        intervals.sort()
        if any(s2 < f1 for (_, f1), (s2, _) in zip(intervals, intervals[1:])):
            return False
    return True

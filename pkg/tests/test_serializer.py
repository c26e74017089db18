"""
Test switch serialization
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muxbench.models.circuit import physical_levels, structurally_equal, strip_mux_gates, wire_sequences
from muxbench.models.options import OrderHeuristic, SerializerOptions
from muxbench.processors.dag import asap_schedule, build_dag
from muxbench.processors.router import route
from muxbench.processors.serializer import serialize, switch_exclusive
from muxbench.processors.switch_grouping import random_grouping, trivial_grouping
from muxbench.services.hardware import grid_spec, square_grid
from muxbench.utils.error_handlers import ValidationError
from strategies import native_circuits

GRID3 = grid_spec(square_grid(3, 3))
HIDE_OFF = SerializerOptions(hide_delays=False)


class TestChains:
    """Test switch chains on hand-checked circuits."""

    def test_three_gates_two_switches(self, grid3, factory):
        circuit = factory.layer("H", range(3), 3, spec=grid3)
        result = serialize(circuit, trivial_grouping(3, 2), grid3)

        assert [g.name for g in result.circuit] == ["H", "SW", "SDEL", "H", "H"]
        assert (result.inserted_sw, result.inserted_sdel) == (1, 1)
        assert result.base_duration == 20
        assert result.duration == 50
        assert result.overhead_ns == 30

    def test_switch_time_override(self, grid3, factory):
        circuit = factory.layer("H", range(3), 3, spec=grid3)
        result = serialize(circuit, trivial_grouping(3, 2), grid3, SerializerOptions(t_sw_ns=5))
        assert result.duration == 45

    @pytest.mark.parametrize("k,layers", [(2, 1), (5, 3), (9, 2)])
    def test_dense_single_switch(self, grid3, factory, k, layers):
        circuit = factory.layer("H", range(k), k, spec=grid3, depth=layers)
        result = serialize(circuit, trivial_grouping(k, k), grid3, HIDE_OFF)

        assert result.duration == layers * (k * 20 + (k - 1) * 10)
        assert result.inserted_sdel == layers * (k - 1)
        # one bare SW carries the switch back between layers
        assert result.inserted_sw == layers * (k - 1) + (layers - 1)

    def test_one_qubit_per_switch_is_identity(self, grid5, factory):
        circuit = factory.random(grid5, 200, seed=4)
        result = serialize(circuit, trivial_grouping(25, 1), grid5)
        assert result.circuit == circuit
        assert result.duration == result.base_duration
        assert (result.inserted_sw, result.inserted_sdel) == (0, 0)


class TestOrdering:
    """Test the chain ordering heuristics."""

    OPS = [("H", 0), ("H", 1), ("CZ", 1, 2)]

    def test_distance_to_next_two_qubit_gate_first(self, line4, factory):
        circuit = factory.from_ops(4, self.OPS, spec=line4)
        result = serialize(circuit, trivial_grouping(4, 2), line4)
        switch = next(g for g in result.circuit if g.name == "SW")
        assert switch.qubits == (1, 0)
        assert result.duration == 220

    def test_by_index(self, line4, factory):
        circuit = factory.from_ops(4, self.OPS, spec=line4)
        options = SerializerOptions(order_heuristic=OrderHeuristic.from_flag("index"))
        result = serialize(circuit, trivial_grouping(4, 2), line4, options)
        switch = next(g for g in result.circuit if g.name == "SW")
        assert switch.qubits == (0, 1)
        assert result.duration == 250


class TestDelayHiding:
    """Test settling delays absorbed by running two-qubit gates."""

    def test_long_two_qubit_gate_covers_delay(self, line4, factory):
        ops = [("H", 0), ("CZ", 1, 2), ("H", 0), ("H", 1)]
        circuit = factory.from_ops(4, ops, spec=line4)
        grouping = trivial_grouping(4, 2)

        hidden = serialize(circuit, grouping, line4)
        assert hidden.hidden_sdel == 1 and hidden.inserted_sdel == 0
        assert hidden.duration == hidden.base_duration == 220

        shown = serialize(circuit, grouping, line4, HIDE_OFF)
        assert shown.hidden_sdel == 0 and shown.inserted_sdel == 1
        assert shown.duration == 230

    OPS_INTO_2Q = [("RX", 0, (0.5,)), ("CZ", 1, 2), ("RX", 0, (0.5,)), ("H", 1), ("CZ", 0, 3)]

    def test_short_gap_keeps_delay(self, line4, factory):
        # q1 is released 8 ns after q0's pulse, less than the 10 ns settling time
        circuit = factory.from_ops(4, self.OPS_INTO_2Q, spec=line4)
        grouping = trivial_grouping(4, 2)

        hidden = serialize(circuit, grouping, line4)
        shown = serialize(circuit, grouping, line4, HIDE_OFF)
        assert (hidden.hidden_sdel, hidden.inserted_sdel) == (0, 1)
        assert (shown.hidden_sdel, shown.inserted_sdel) == (0, 1)
        assert hidden.duration == shown.duration == 400

    @pytest.mark.parametrize("t_sw,hidden_count", [(5, 1), (8, 1), (9, 0)])
    def test_gap_against_switch_time(self, line4, factory, t_sw, hidden_count):
        circuit = factory.from_ops(4, self.OPS_INTO_2Q, spec=line4)
        result = serialize(circuit, trivial_grouping(4, 2), line4, SerializerOptions(t_sw_ns=t_sw))
        assert (result.hidden_sdel, result.inserted_sdel) == (hidden_count, 1 - hidden_count)
        assert not settle_violations(result.circuit, circuit, t_sw)

    def test_no_hiding_without_two_qubit_gate_on_target(self, line4, factory):
        ops = [("H", 0), ("H", 1), ("H", 0), ("H", 1)]
        circuit = factory.from_ops(4, ops, spec=line4)
        result = serialize(circuit, trivial_grouping(4, 2), line4)
        assert result.hidden_sdel == 0
        assert result.inserted_sdel == 2

    @pytest.mark.parametrize("hardware", ["grid5", "eagle"])
    @pytest.mark.parametrize("k", [2, 5, 13])
    def test_settling_time_respected(self, request, factory, hardware, k):
        spec = request.getfixturevalue(hardware)
        options = SerializerOptions(t_sw_ns=15)
        hidden_total = 0
        for seed in range(4):
            routed = route(factory.random(spec, 400, seed=seed), spec, seed=seed)
            result = serialize(routed, random_grouping(spec.n, k, seed=seed), spec, options)
            assert settle_violations(result.circuit, routed.circuit, 15) == []
            hidden_total += result.hidden_sdel
        assert hidden_total > 0


class TestInvariants:
    """Test properties of serialized circuits."""

    @pytest.mark.parametrize("hide", [True, False])
    @pytest.mark.parametrize("k", [2, 5, 13])
    def test_routed_random_circuits(self, grid5, factory, hide, k):
        routed = route(factory.random(grid5, 500, seed=k), grid5, seed=k)
        grouping = random_grouping(25, k, seed=k)
        result = serialize(routed, grouping, grid5, SerializerOptions(hide_delays=hide))

        assert switch_exclusive(result.circuit, grouping)
        assert count_mux_gates(result.circuit) == (result.inserted_sw, result.inserted_sdel)
        assert structurally_equal(strip_mux_gates(result.circuit), routed.circuit)
        assert result.duration >= result.base_duration

    def test_unserialized_circuit_is_not_exclusive(self, grid3, factory):
        circuit = factory.layer("H", range(3), 3, spec=grid3)
        assert not switch_exclusive(circuit, trivial_grouping(3, 3))

    @settings(max_examples=200, deadline=None)
    @given(native_circuits(GRID3, max_gates=40), st.integers(min_value=1, max_value=9))
    def test_stripping_restores_input(self, circuit, k):
        grouping = trivial_grouping(9, k)
        hidden = serialize(circuit, grouping, GRID3)
        shown = serialize(circuit, grouping, GRID3, HIDE_OFF)

        assert structurally_equal(strip_mux_gates(hidden.circuit), circuit)
        assert switch_exclusive(hidden.circuit, grouping)
        assert circuit_duration_order(hidden, shown)

    def test_already_serialized_rejected(self, grid3, factory):
        circuit = factory.layer("H", range(3), 3, spec=grid3)
        once = serialize(circuit, trivial_grouping(3, 3), grid3)
        with pytest.raises(ValidationError):
            serialize(once.circuit, trivial_grouping(3, 3), grid3)

    def test_grouping_too_small(self, grid3, factory):
        circuit = factory.layer("H", range(4), 4, spec=grid3)
        with pytest.raises(ValidationError):
            serialize(circuit, trivial_grouping(3, 3), grid3)


def count_mux_gates(circuit):
    names = [g.name for g in circuit.gates]
    return names.count("SW"), names.count("SDEL")


def circuit_duration_order(hidden, shown) -> bool:
    """Base <= hidden <= shown, with the same switch moves in both."""
    return (
        hidden.base_duration <= hidden.duration <= shown.duration
        and hidden.inserted_sw == shown.inserted_sw
        and hidden.inserted_sdel + hidden.hidden_sdel == shown.inserted_sdel
    )


def settle_violations(serialized, source, t_sw):
    """(previous pulse, next pulse, gap) for in-layer switches whose gap is below t_sw."""
    level_of = {g.id: lvl for g, lvl in zip(source.gates, physical_levels(source))}
    schedule = asap_schedule(build_dag(serialized))
    wires = wire_sequences(serialized)
    found = []
    for gate in serialized.gates:
        if gate.name != "SW":
            continue
        a, b = gate.qubits
        on_a, on_b = wires[a], wires[b]
        before = on_a[on_a.index(gate) - 1] if on_a.index(gate) > 0 else None
        after = on_b[on_b.index(gate) + 1] if on_b.index(gate) + 1 < len(on_b) else None
        if before is None or after is None or not (before.is_single_physical and after.is_single_physical):
            continue
        if level_of[before.id] != level_of[after.id]:
            continue
        gap = schedule.start[after.id] - schedule.finish[before.id]
        if gap < t_sw:
            found.append((before.id, after.id, gap))
    return found

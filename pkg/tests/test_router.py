"""
Test SWAP routing
"""
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muxbench.models.circuit import CircuitBuilder
from muxbench.models.hardware import normalize_edge
from muxbench.processors.router import route
from muxbench.services.hardware import grid_spec, square_grid
from muxbench.utils.error_handlers import CapacityError, ValidationError

GRID3 = grid_spec(square_grid(3, 3))


def two_qubit_pairs(circuit):
    return [normalize_edge(*g.qubits) for g in circuit.gates if g.is_two_physical]


def logical_interactions(routed):
    """Two-qubit interactions mapped back to logical qubits; tagged SWAPs move the layout."""
    p2l = list(routed.initial_layout)
    seen_swaps = set()
    pairs = []
    for gate in routed.circuit.gates:
        if gate.tag.startswith("swap"):
            if gate.tag not in seen_swaps and gate.is_two_physical:
                seen_swaps.add(gate.tag)
                p1, p2 = gate.qubits
                p2l[p1], p2l[p2] = p2l[p2], p2l[p1]
            continue
        if gate.is_two_physical:
            pairs.append(normalize_edge(p2l[gate.qubits[0]], p2l[gate.qubits[1]]))
    return pairs


def assert_coupled(routed, spec):
    for gate in routed.circuit.gates:
        if gate.is_two_physical:
            assert spec.coupling.has_edge(*gate.qubits), gate


@st.composite
def far_pair_circuits(draw):
    """CZ and H gates on arbitrary qubit pairs of a 3x3 grid."""
    builder = CircuitBuilder(9, spec=GRID3)
    for _ in range(draw(st.integers(min_value=1, max_value=25))):
        if draw(st.booleans()):
            a, b = draw(st.lists(st.integers(0, 8), min_size=2, max_size=2, unique=True))
            builder.add("CZ", a, b)
        else:
            builder.add("H", draw(st.integers(0, 8)))
    return builder.build()


class TestRouting:
    """Test routed circuits."""

    def test_adjacent_gates_need_no_swaps(self, grid5, factory):
        circuit = factory.from_ops(3, [("H", 0), ("CZ", 0, 1), ("CZ", 1, 2)], spec=grid5)
        routed = route(circuit, grid5)
        assert routed.swap_count == 0
        assert routed.final_layout == routed.initial_layout
        assert [g.name for g in routed.circuit] == ["H", "CZ", "CZ"]

    def test_distant_gate(self, grid5, factory):
        circuit = factory.from_ops(25, [("CZ", 0, 24)], spec=grid5)
        routed = route(circuit, grid5, seed=3)

        assert routed.swap_count >= 7
        assert_coupled(routed, grid5)
        assert logical_interactions(routed) == [(0, 24)]
        assert sorted(routed.final_layout) == list(range(25))

    def test_swaps_are_tagged_native_gates(self, grid5, factory):
        circuit = factory.from_ops(25, [("CZ", 0, 12)], spec=grid5)
        routed = route(circuit, grid5)
        tags = Counter(g.tag for g in routed.circuit if g.tag.startswith("swap"))
        assert len(tags) == routed.swap_count
        assert set(tags.values()) == {9}

    def test_random_circuit(self, grid5, factory):
        circuit = factory.random(grid5, 400, seed=11)
        routed = route(circuit, grid5, seed=11)
        assert_coupled(routed, grid5)
        assert Counter(logical_interactions(routed)) == Counter(two_qubit_pairs(circuit))
        untagged = [g for g in routed.circuit if not g.tag.startswith("swap")]
        assert len(untagged) == len(circuit)

    def test_deterministic_per_seed(self, eagle):
        builder = CircuitBuilder(40, spec=eagle)
        for q in range(20):
            builder.add("ECR", q, 39 - q)
        circuit = builder.build()

        first = route(circuit, eagle, seed=5)
        second = route(circuit, eagle, seed=5)
        assert [(g.name, g.qubits) for g in first.circuit] == [(g.name, g.qubits) for g in second.circuit]
        assert first.final_layout == second.final_layout
        assert_coupled(first, eagle)

    @settings(max_examples=200, deadline=None)
    @given(far_pair_circuits(), st.integers(min_value=0, max_value=3))
    def test_interactions_preserved(self, circuit, seed):
        routed = route(circuit, GRID3, seed=seed)
        assert_coupled(routed, GRID3)
        assert Counter(logical_interactions(routed)) == Counter(two_qubit_pairs(circuit))


class TestRoutingErrors:
    """Test rejected inputs."""

    def test_too_many_qubits(self, grid3, factory):
        circuit = factory.from_ops(10, [("H", 9)], spec=None)
        with pytest.raises(CapacityError):
            route(circuit, grid3)

    def test_non_native_circuit(self, grid3, factory):
        circuit = factory.from_ops(2, [("CX", 0, 1)])
        with pytest.raises(ValidationError):
            route(circuit, grid3)

"""
Test benchmark circuit generators
"""
import pytest

from muxbench.models.circuit import GateClass
from muxbench.models.hardware import CouplingMap
from muxbench.models.options import RandomCircuitConfig
from muxbench.processors.benchgen import algo_circuit, algorithm_names, ghz, qft, random_circuit
from muxbench.processors.rebase import is_native_circuit
from muxbench.services.hardware import grid_spec
from muxbench.utils.error_handlers import CapacityError, ValidationError


class TestRandomCircuit:
    """Test the weighted random generator."""

    def test_native_and_coupled(self, grid5, factory):
        circuit = factory.random(grid5, 500, seed=1)
        assert len(circuit) == 500
        assert is_native_circuit(circuit, grid5)
        for gate in circuit.gates:
            if gate.is_two_physical:
                assert grid5.coupling.has_edge(*gate.qubits)

    def test_two_qubit_share(self, eagle):
        circuit = random_circuit(RandomCircuitConfig(n=127, num_gates=10_000, w1=0.7, w2=0.3, seed=8), eagle)
        share = circuit.count(GateClass.TWO_PHYSICAL) / len(circuit)
        assert share == pytest.approx(0.3, abs=0.03)

    def test_parametric_gates_carry_angles(self, grid5, factory):
        circuit = factory.random(grid5, 300, seed=2)
        for gate in circuit.gates:
            if gate.name in ("RX", "RY", "RZ"):
                assert len(gate.params) == 1

    def test_deterministic_per_seed(self, grid5, factory):
        first = factory.random(grid5, 100, seed=5)
        assert first == factory.random(grid5, 100, seed=5)
        assert first != factory.random(grid5, 100, seed=6)

    def test_empty(self, grid5, factory):
        assert len(factory.random(grid5, 0)) == 0

    def test_sub_register(self, grid5, factory):
        circuit = factory.random(grid5, 300, seed=3, n=7)
        assert circuit.n == 7
        assert all(q < 7 for g in circuit.gates for q in g.qubits)

    def test_register_without_couplers(self):
        spec = grid_spec(CouplingMap(3, frozenset({(1, 2)})))
        cfg = RandomCircuitConfig(n=1, num_gates=50, w1=0.0, w2=1.0)
        circuit = random_circuit(cfg, spec)
        assert circuit.count(GateClass.TWO_PHYSICAL) == 0
        assert len(circuit) == 50

    def test_too_many_qubits(self, grid5):
        with pytest.raises(CapacityError):
            random_circuit(RandomCircuitConfig(n=26, num_gates=10), grid5)

    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            RandomCircuitConfig(n=3, num_gates=10, w1=0.5, w2=0.4)


class TestAlgorithms:
    """Test the algorithm circuits."""

    def test_ghz(self):
        assert [(g.name, g.qubits) for g in ghz(3)] == [("H", (0,)), ("CX", (0, 1)), ("CX", (1, 2))]

    def test_qft_single_qubit(self):
        assert [g.name for g in qft(1)] == ["H"]

    def test_qft_phases_and_swaps(self):
        circuit = qft(4)
        tags = {g.tag for g in circuit.gates if g.tag}
        assert len(tags) == 6
        assert [g.qubits for g in circuit.gates if g.name == "SWAP"] == [(0, 3), (1, 2)]

    @pytest.mark.parametrize("name", ["ghz", "qft", "graphstate", "bv", "wstate"])
    def test_every_algorithm_builds(self, name):
        circuit = algo_circuit(name, 6, seed=1)
        assert circuit.n == 6
        assert len(circuit) > 0
        assert circuit == algo_circuit(name, 6, seed=1)

    def test_names(self):
        assert algorithm_names() == ["bv", "ghz", "graphstate", "qft", "wstate"]

    def test_unknown_algorithm(self):
        with pytest.raises(ValidationError):
            algo_circuit("grover", 4)

    def test_no_qubits(self):
        with pytest.raises(ValidationError):
            algo_circuit("ghz", 0)

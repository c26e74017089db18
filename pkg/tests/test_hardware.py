"""
Test hardware presets and spec files
"""
import json

import pytest

from muxbench.models.hardware import CouplingMap, HardwareSpec
from muxbench.services.hardware import (
    load_hardware_spec,
    preset_names,
    resolve_spec,
    save_hardware_spec,
    square_grid,
)
from muxbench.utils.error_handlers import StorageError, UnsupportedGateError, ValidationError


class TestCouplingMap:
    """Test connectivity graphs."""

    def test_square_grid(self):
        grid = square_grid(5, 5)
        assert grid.n == 25
        assert len(grid.edges) == 40
        assert grid.has_edge(0, 1) and grid.has_edge(5, 0)
        assert not grid.has_edge(4, 5)
        assert grid.diameter() == 8

    def test_edges_are_normalized(self):
        coupling = CouplingMap(3, frozenset({(1, 0), (2, 1)}))
        assert coupling.sorted_edges == [(0, 1), (1, 2)]
        assert coupling.distance_matrix[0, 2] == 2

    def test_self_loop_rejected(self):
        with pytest.raises(ValidationError):
            CouplingMap(2, frozenset({(1, 1)}))

    def test_edge_outside_register(self):
        with pytest.raises(ValidationError):
            CouplingMap(2, frozenset({(0, 2)}))

    def test_disconnected(self):
        coupling = CouplingMap(4, frozenset({(0, 1), (2, 3)}))
        assert not coupling.is_connected()
        assert coupling.diameter() == 1


class TestPresets:
    """Test the built-in hardware."""

    def test_names(self):
        assert preset_names() == ["eagle", "grid11", "grid5"]

    def test_grid_durations(self, grid5):
        assert grid5.n == 25
        assert grid5.t_1q == 20 and grid5.t_2q == 200
        assert grid5.duration_of("RZ") == 0
        assert grid5.duration_of("SDEL") == grid5.t_sw_ns

    def test_eagle(self, eagle):
        assert eagle.n == 127
        assert len(eagle.coupling.edges) == 144
        assert eagle.coupling.is_connected()
        assert max(eagle.coupling.degree(q) for q in range(127)) == 3
        assert eagle.t_1q == 60 and eagle.t_2q == 660

    def test_switch_time_override(self):
        assert resolve_spec("grid5", t_sw_ns=5).t_sw_ns == 5

    def test_unknown_preset(self):
        with pytest.raises(ValidationError):
            resolve_spec("grid7")

    def test_unknown_gate_duration(self, grid5):
        with pytest.raises(UnsupportedGateError):
            grid5.duration_of("ECR")


class TestHierarchy:
    """Test duration validation."""

    def test_switch_slower_than_gate(self):
        with pytest.raises(ValidationError):
            resolve_spec("grid5", t_sw_ns=20)

    def test_two_qubit_faster_than_one_qubit(self):
        with pytest.raises(ValidationError):
            HardwareSpec(
                name="bad",
                coupling=square_grid(2, 2),
                native_1q={"H": 50},
                native_2q={"CZ": 40},
            )

    def test_ratio_copy(self, grid5):
        equal = grid5.with_two_qubit_ratio(1)
        assert equal.t_2q == equal.t_1q == 20
        assert grid5.with_two_qubit_ratio(30).t_2q == 600
        with pytest.raises(ValidationError):
            grid5.with_two_qubit_ratio(0.5)

    def test_virtual_must_be_virtual(self):
        with pytest.raises(ValidationError):
            HardwareSpec(
                name="bad",
                coupling=square_grid(2, 2),
                native_1q={"H": 20},
                native_2q={"CZ": 200},
                virtual=frozenset({"X"}),
            )


class TestSpecFiles:
    """Test hardware JSON files."""

    def test_roundtrip(self, tmp_path, eagle):
        path = save_hardware_spec(eagle, tmp_path / "eagle.json")
        loaded = load_hardware_spec(path)
        assert loaded.coupling.edges == eagle.coupling.edges
        assert dict(loaded.native_2q) == {"ECR": 660}
        assert resolve_spec(str(path)).n == 127

    def test_lowercase_gate_names(self, tmp_path):
        path = tmp_path / "line.json"
        path.write_text(json.dumps({
            "name": "line",
            "n": 3,
            "edges": [[0, 1], [1, 2]],
            "gates": {"sx": {"arity": 1, "ns": 30}, "cz": {"arity": 2, "ns": 100}},
            "t_sw_ns": 5,
        }))
        spec = load_hardware_spec(path)
        assert spec.duration_of("SX") == 30
        assert spec.t_sw_ns == 5

    def test_wrong_arity(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            "n": 2, "edges": [[0, 1]], "gates": {"H": {"arity": 2, "ns": 30}, "CZ": {"arity": 2, "ns": 100}},
        }))
        with pytest.raises(ValidationError):
            load_hardware_spec(path)

    def test_unknown_field(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "edges": [], "gates": {}, "colour": "red"}))
        with pytest.raises(ValidationError):
            load_hardware_spec(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        with pytest.raises(ValidationError):
            load_hardware_spec(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(StorageError):
            load_hardware_spec(tmp_path / "nope.json")

"""
Test configuration and fixtures
"""
from typing import Iterable, Sequence, Tuple

import pytest

from muxbench.models.circuit import Circuit, CircuitBuilder
from muxbench.models.hardware import CouplingMap, HardwareSpec
from muxbench.models.options import RandomCircuitConfig
from muxbench.models.reports import DensityReport, OverheadReport
from muxbench.processors.benchgen import random_circuit
from muxbench.services.analysis import overhead_report
from muxbench.services.hardware import eagle_spec, grid_spec, resolve_spec, square_grid


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Run slow acceptance checks.")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def grid5():
    """5x5 grid preset."""
    return resolve_spec("grid5")


@pytest.fixture(scope="session")
def grid11():
    """11x11 grid preset."""
    return resolve_spec("grid11")


@pytest.fixture(scope="session")
def eagle():
    """127-qubit heavy-hexagon preset."""
    return eagle_spec()


@pytest.fixture(scope="session")
def grid3():
    """Small 3x3 grid with grid-style gate times."""
    return grid_spec(square_grid(3, 3))


@pytest.fixture
def line4():
    """Four qubits on a ring: 0-1-2-3-0."""
    coupling = CouplingMap(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}), name="ring4")
    return HardwareSpec(
        name="ring4",
        coupling=coupling,
        native_1q={"H": 20, "RX": 96},
        native_2q={"CZ": 200},
        t_sw_ns=10,
    )


@pytest.fixture
def out_dir(tmp_path):
    """Output directory for command runs."""
    path = tmp_path / "results"
    path.mkdir()
    return path


Op = Tuple


class CircuitFactory:
    """Helpers for building test circuits."""

    @staticmethod
    def from_ops(n: int, ops: Iterable[Op], spec: HardwareSpec = None) -> Circuit:
        """Build from (name, qubits...) or (name, qubits..., params) tuples."""
        builder = CircuitBuilder(n, spec=spec)
        for op in ops:
            name, rest = op[0], op[1:]
            params: Sequence[float] = ()
            if rest and isinstance(rest[-1], tuple):
                params, rest = rest[-1], rest[:-1]
            builder.add(name, *rest, params=params)
        return builder.build()

    @staticmethod
    def layer(name: str, qubits: Iterable[int], n: int, spec: HardwareSpec = None, depth: int = 1) -> Circuit:
        """``depth`` layers of the same single-qubit gate on every given qubit."""
        builder = CircuitBuilder(n, spec=spec)
        for _ in range(depth):
            for q in qubits:
                builder.add(name, q)
        return builder.build()

    @staticmethod
    def random(spec: HardwareSpec, num_gates: int, seed: int = 0, n: int = None, w1: float = 0.7) -> Circuit:
        cfg = RandomCircuitConfig(n=n or spec.n, num_gates=num_gates, w1=w1, w2=1.0 - w1, seed=seed)
        return random_circuit(cfg, spec)


@pytest.fixture
def factory():
    """Provide circuit helpers."""
    return CircuitFactory


class ReportFactory:
    """Overhead reports with chosen durations."""

    @staticmethod
    def make(
        k: int,
        abs_ns: int,
        circuit: str = "random-25",
        seed: int = 0,
        routed: int = 1000,
        translated: int = 800,
        n1: int = 100,
    ) -> OverheadReport:
        densities = DensityReport(n=25, N1=n1, N2=10, D=20, rho1=n1 / 500, rho2=0.04)
        return overhead_report(
            translated,
            routed,
            routed + abs_ns,
            densities,
            circuit=circuit,
            algo="random",
            n=25,
            k=k,
            strategy="trivial",
            seed=seed,
        )


@pytest.fixture
def reports():
    """Provide report helpers."""
    return ReportFactory

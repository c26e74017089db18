"""
Benchmark circuit generators: weighted random native circuits and a small set
of textbook algorithm circuits in frontend gates.
"""
import math
from typing import Callable, Dict, List

import networkx as nx
import numpy as np
import structlog

from muxbench.models.circuit import PARAMETRIC_GATES, Circuit, CircuitBuilder
from muxbench.models.hardware import HardwareSpec
from muxbench.models.options import RandomCircuitConfig
from muxbench.utils.error_handlers import CapacityError, ValidationError

logger = structlog.get_logger()

TWO_PI = 2 * math.pi


def random_circuit(cfg: RandomCircuitConfig, spec: HardwareSpec) -> Circuit:
    """Random circuit in the hardware's native gates.

    Each step picks a single-qubit gate with probability ``w1`` (uniform native or
    virtual kind on a uniform qubit) or a two-qubit gate with probability ``w2``
    (uniform native kind on a uniform coupler among the first ``n`` qubits).

    Args:
        cfg: Size, weights and seed
        spec: Hardware providing the native gate set and the couplers

    Returns:
        Circuit over ``cfg.n`` qubits with durations from the spec
    """
    if cfg.n > spec.n:
        raise CapacityError(f"Random circuit needs {cfg.n} qubits, hardware has {spec.n}")

    pool_1q = sorted(spec.native_1q) + sorted(spec.virtual)
    pool_2q = sorted(spec.native_2q)
    edges = [e for e in spec.coupling.sorted_edges if e[1] < cfg.n]

    rng = np.random.default_rng(cfg.seed)
    count = cfg.num_gates
    single = rng.random(count) < cfg.w1
    kind_1q = rng.integers(len(pool_1q), size=count)
    qubit = rng.integers(cfg.n, size=count)
    kind_2q = rng.integers(len(pool_2q), size=count)
    edge_index = rng.integers(max(len(edges), 1), size=count)
    flipped = rng.random(count) < 0.5
    angle = rng.uniform(0.0, TWO_PI, size=count)

    builder = CircuitBuilder(cfg.n, spec=spec)
    for i in range(count):
        # no coupler inside the register: every draw is single-qubit
        if single[i] or not edges:
            name = pool_1q[kind_1q[i]]
            params = (float(angle[i]),) if name in PARAMETRIC_GATES else ()
            builder.add(name, int(qubit[i]), params=params)
        else:
            a, b = edges[edge_index[i]]
            if flipped[i]:
                a, b = b, a
            builder.add(pool_2q[kind_2q[i]], a, b)

    circuit = builder.build()
    logger.debug("Generated random circuit", n=cfg.n, gates=count, seed=cfg.seed, hardware=spec.name)
    return circuit


def _controlled_phase(builder: CircuitBuilder, theta: float, control: int, target: int) -> None:
    tag = f"cp{control}_{target}"
    builder.add("RZ", control, params=(theta / 2,), tag=tag)
    builder.add("CX", control, target, tag=tag)
    builder.add("RZ", target, params=(-theta / 2,), tag=tag)
    builder.add("CX", control, target, tag=tag)
    builder.add("RZ", target, params=(theta / 2,), tag=tag)


def _controlled_ry(builder: CircuitBuilder, theta: float, control: int, target: int) -> None:
    builder.add("RY", target, params=(theta / 2,))
    builder.add("CX", control, target)
    builder.add("RY", target, params=(-theta / 2,))
    builder.add("CX", control, target)


def ghz(n: int, seed: int = 0) -> Circuit:
    builder = CircuitBuilder(n)
    builder.add("H", 0)
    for q in range(n - 1):
        builder.add("CX", q, q + 1)
    return builder.build()


def qft(n: int, seed: int = 0) -> Circuit:
    """Quantum Fourier transform with CX-decomposed controlled phases and final swaps."""
    builder = CircuitBuilder(n)
    for j in range(n):
        builder.add("H", j)
        for k in range(j + 1, n):
            _controlled_phase(builder, math.pi / 2 ** (k - j), k, j)
    for q in range(n // 2):
        builder.add("SWAP", q, n - 1 - q)
    return builder.build()


def graph_state(n: int, seed: int = 0) -> Circuit:
    """Graph state on a seeded connected small-world graph (a path below 3 qubits)."""
    if n < 3:
        graph = nx.path_graph(n)
    else:
        graph = nx.connected_watts_strogatz_graph(n, 2, 0.5, seed=seed)
    builder = CircuitBuilder(n)
    for q in range(n):
        builder.add("H", q)
    for a, b in sorted(tuple(sorted(e)) for e in graph.edges):
        builder.add("CZ", a, b)
    return builder.build()


def bernstein_vazirani(n: int, seed: int = 0) -> Circuit:
    """Bernstein-Vazirani over ``n - 1`` data qubits; the last qubit is the ancilla."""
    data = n - 1
    secret = np.random.default_rng(seed).integers(2, size=data)
    ancilla = n - 1
    builder = CircuitBuilder(n)
    builder.add("X", ancilla)
    for q in range(n):
        builder.add("H", q)
    for q in range(data):
        if secret[q]:
            builder.add("CX", q, ancilla)
    for q in range(data):
        builder.add("H", q)
        builder.add("MEASURE", q)
    return builder.build()


def w_state(n: int, seed: int = 0) -> Circuit:
    """W state by a ladder of controlled rotations and CX corrections."""
    builder = CircuitBuilder(n)
    builder.add("X", 0)
    for q in range(n - 1):
        theta = 2 * math.acos(math.sqrt(1 / (n - q)))
        _controlled_ry(builder, theta, q, q + 1)
        builder.add("CX", q + 1, q)
    return builder.build()


ALGORITHMS: Dict[str, Callable[[int, int], Circuit]] = {
    "ghz": ghz,
    "qft": qft,
    "graphstate": graph_state,
    "bv": bernstein_vazirani,
    "wstate": w_state,
}


def algo_circuit(name: str, n: int, seed: int = 0) -> Circuit:
    """Built-in algorithm circuit in frontend gates, deterministic per (name, n, seed)."""
    if name not in ALGORITHMS:
        raise ValidationError(f"Unknown algorithm '{name}'; choose from {sorted(ALGORITHMS)}", field="algo")
    if n < 1:
        raise ValidationError("Algorithm circuits need at least one qubit", field="n")
    circuit = ALGORITHMS[name](n, seed)
    logger.debug("Built algorithm circuit", algo=name, n=n, gates=len(circuit))
    return circuit


def algorithm_names() -> List[str]:
    return sorted(ALGORITHMS)


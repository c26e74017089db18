"""
Dependency graph, ASAP scheduling and structural metrics of circuits.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx
import structlog

from muxbench.models.circuit import Circuit, GateInstance, physical_levels
from muxbench.models.reports import DensityReport
from muxbench.utils.error_handlers import DegenerateInputError, StructuralError, ValidationError

logger = structlog.get_logger()


@dataclass(frozen=True)
class CircuitDag:
    """Per-wire dependency graph of a circuit.

    Nodes are gate ids; an edge (u, v) exists when v is the next gate after u on
    some shared qubit.
    """
    graph: nx.DiGraph
    gates: Dict[int, GateInstance]

    @property
    def nodes(self) -> List[int]:
        return list(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return list(self.graph.edges)

    def predecessors(self, gate_id: int) -> List[int]:
        return list(self.graph.predecessors(gate_id))

    def successors(self, gate_id: int) -> List[int]:
        return list(self.graph.successors(gate_id))


@dataclass(frozen=True)
class Schedule:
    """ASAP start times and the resulting total duration in ns."""
    start: Dict[int, int]
    finish: Dict[int, int]
    total_duration: int


def build_dag(circuit: Circuit) -> CircuitDag:
    """Build the per-qubit adjacency DAG.

    Args:
        circuit: Circuit to analyse

    Returns:
        CircuitDag over gate ids
    """
    graph = nx.DiGraph()
    last_on_wire: Dict[int, int] = {}
    gates: Dict[int, GateInstance] = {}

    for gate in circuit.gates:
        graph.add_node(gate.id, duration=gate.duration)
        gates[gate.id] = gate
        for q in gate.qubits:
            prev = last_on_wire.get(q)
            if prev is not None:
                graph.add_edge(prev, gate.id)
            last_on_wire[q] = gate.id

    return CircuitDag(graph=graph, gates=gates)


def asap_schedule(dag: CircuitDag) -> Schedule:
    """As-soon-as-possible schedule: each gate starts when all predecessors finish."""
    try:
        order = list(nx.topological_sort(dag.graph))
    except nx.NetworkXUnfeasible as e:
        raise StructuralError(f"Dependency graph contains a cycle: {e}")

    start: Dict[int, int] = {}
    finish: Dict[int, int] = {}
    for node in order:
        t = max((finish[p] for p in dag.graph.predecessors(node)), default=0)
        start[node] = t
        finish[node] = t + dag.graph.nodes[node]["duration"]

    total = max(finish.values(), default=0)
    return Schedule(start=start, finish=finish, total_duration=total)


def circuit_duration(circuit: Circuit) -> int:
    """Critical-path length of a circuit in ns."""
    return asap_schedule(build_dag(circuit)).total_duration


def depth(circuit: Circuit) -> int:
    """Layer count over physical gates; virtual and meta gates do not add layers."""
    levels = physical_levels(circuit)
    return max((lvl + 1 for g, lvl in zip(circuit.gates, levels) if g.is_physical), default=0)


def gate_densities(circuit: Circuit, width: Optional[int] = None) -> DensityReport:
    """Gate counts and densities of a circuit without mux gates.

    rho1 = N1 / (n * D) and rho2 = 2 * N2 / (n * D). ``width`` replaces the register size n, e.g. by the
    qubits a routed circuit touches.

    Raises:
        DegenerateInputError: n * D is 0
    """
    if any(g.kind.is_mux for g in circuit.gates):
        raise ValidationError("Densities are defined on circuits without switch gates", field="gates")

    n1 = sum(1 for g in circuit.gates if g.is_single_physical)
    n2 = sum(1 for g in circuit.gates if g.is_two_physical)
    d = depth(circuit)
    n = circuit.n if width is None else width
    if n * d == 0:
        raise DegenerateInputError(f"Densities need n * D > 0 (n={n}, D={d})")

    return DensityReport(n=n, N1=n1, N2=n2, D=d, rho1=n1 / (n * d), rho2=2 * n2 / (n * d))


def active_qubits(circuit: Circuit) -> int:
    """Number of wires carrying at least one physical gate."""
    return len({q for g in circuit.gates if g.is_physical for q in g.qubits})

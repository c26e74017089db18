"""
Star partitions of couplers and conflict checking of routed circuits.

Couplers sharing a qubit can never run concurrently, so grouping every coupler
around a common centre qubit lets one control line drive the whole group.
"""
from typing import Dict, List, Optional, Tuple

import networkx as nx
import structlog

from muxbench.models.circuit import Circuit
from muxbench.models.grouping import CouplerGrouping
from muxbench.models.hardware import CouplingMap, Edge, normalize_edge
from muxbench.processors.dag import asap_schedule, build_dag
from muxbench.utils.error_handlers import ValidationError

logger = structlog.get_logger()

# (group index, first gate id, second gate id)
ConflictWitness = Tuple[int, int, int]


def _bipartite_centers(coupling: CouplingMap) -> Optional[List[int]]:
    """Smaller colour class of a 2-colouring, per connected component."""
    graph = coupling.graph
    if not nx.is_bipartite(graph):
        return None

    centers: List[int] = []
    for component in sorted(nx.connected_components(graph), key=min):
        if len(component) == 1:
            continue
        colouring = nx.bipartite.color(graph.subgraph(component))
        root = min(component)
        side_a = sorted(q for q, c in colouring.items() if c == colouring[root])
        side_b = sorted(q for q, c in colouring.items() if c != colouring[root])
        centers.extend(side_a if len(side_a) <= len(side_b) else side_b)
    return sorted(centers)


def _peel_stars(coupling: CouplingMap) -> Tuple[List[int], List[List[Edge]]]:
    """Greedy star peeling: repeatedly take the qubit with most unassigned couplers."""
    remaining = set(coupling.edges)
    incident: Dict[int, set] = {q: set() for q in range(coupling.n)}
    for a, b in remaining:
        incident[a].add((a, b))
        incident[b].add((a, b))

    centers: List[int] = []
    groups: List[List[Edge]] = []
    while remaining:
        center = max(range(coupling.n), key=lambda q: (len(incident[q]), -q))
        star = sorted(incident[center])
        for a, b in star:
            incident[a].discard((a, b))
            incident[b].discard((a, b))
            remaining.discard((a, b))
        centers.append(center)
        groups.append(star)
    return centers, groups


def star_partition(coupling: CouplingMap) -> CouplerGrouping:
    """Partition couplers into stars, one group per centre qubit.

    Bipartite maps (grids, heavy-hexagon) use the smaller colour class as centres so
    every coupler touches exactly one centre. Other maps fall back to greedy star
    peeling, flagged with ``minimal=False``.

    Args:
        coupling: Coupling map to partition

    Returns:
        CouplerGrouping covering every coupler once
    """
    centers = _bipartite_centers(coupling)
    if centers is not None:
        groups = []
        kept_centers = []
        for c in centers:
            star = sorted(normalize_edge(c, nb) for nb in coupling.neighbors[c])
            if star:
                groups.append(star)
                kept_centers.append(c)
        grouping = CouplerGrouping(groups=groups, centers=kept_centers, minimal=True)
    else:
        kept_centers, groups = _peel_stars(coupling)
        grouping = CouplerGrouping(groups=groups, centers=kept_centers, minimal=False)
        logger.warning(
            "Coupling map is not bipartite; star grouping may not be minimal",
            coupling=coupling.name,
            groups=len(groups),
        )

    grouping.validate_against(coupling)
    logger.debug("Coupler grouping built", coupling=coupling.name, groups=grouping.group_count)
    return grouping


def reduction_factor(coupling: CouplingMap, grouping: CouplerGrouping) -> float:
    """Couplers per control line."""
    if grouping.group_count == 0:
        return 1.0
    return len(coupling.edges) / grouping.group_count


def verify_conflict_free(circuit: Circuit, grouping: CouplerGrouping) -> Tuple[bool, Optional[ConflictWitness]]:
    """Check that no two same-group couplers are active at overlapping times.

    Args:
        circuit: Routed circuit
        grouping: Coupler grouping of the hardware

    Returns:
        (True, None) or (False, witness) where witness names the group and two gate ids
    """
    edge_group = grouping.edge_to_group()
    schedule = asap_schedule(build_dag(circuit))

    intervals: Dict[int, List[Tuple[int, int, int]]] = {}
    for gate in circuit.gates:
        if not gate.is_two_physical:
            continue
        edge = normalize_edge(*gate.qubits)
        if edge not in edge_group:
            raise ValidationError(f"Gate {gate.id} acts on uncoupled pair {edge}", field="gates")
        group = edge_group[edge]
        intervals.setdefault(group, []).append((schedule.start[gate.id], schedule.finish[gate.id], gate.id))

    for group in sorted(intervals):
        spans = sorted(intervals[group])
        for (s1, f1, g1), (s2, f2, g2) in zip(spans, spans[1:]):
            if s2 < f1:
                return False, (group, g1, g2)
    return True, None

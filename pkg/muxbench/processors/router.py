"""
SWAP-insertion routing with a lookahead heuristic.

The router walks the dependency graph front layer by front layer. Gates whose
qubits are adjacent under the current layout execute immediately; when the front
is blocked, the SWAP minimising the decay-weighted lookahead cost is applied.
Inserted SWAPs are decomposed into native gates and tagged ``swap<N>``.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
import structlog

from muxbench.config import settings
from muxbench.models.circuit import Circuit, CircuitBuilder, GateInstance
from muxbench.models.hardware import Edge, HardwareSpec, normalize_edge
from muxbench.processors.dag import build_dag
from muxbench.processors.rebase import is_native_circuit, native_ops
from muxbench.utils.error_handlers import CapacityError, ValidationError

logger = structlog.get_logger()

SCORE_DECIMALS = 12


@dataclass(frozen=True)
class RoutedCircuit:
    """A circuit whose two-qubit gates all act on coupled qubits."""
    circuit: Circuit
    initial_layout: Tuple[int, ...]
    final_layout: Tuple[int, ...]
    swap_count: int
    seed: int


class SabreRouter:
    """Lookahead SWAP router on a fixed coupling map.

    Args:
        spec: Target hardware; SWAPs are emitted in its native gate set
        seed: Seed of the per-swap decay increments
    """

    def __init__(self, spec: HardwareSpec, seed: int = 0):
        self.spec = spec
        self.seed = seed
        self.coupling = spec.coupling
        self.dist = spec.coupling.distance_matrix
        self.extended_size = settings.ROUTER_EXTENDED_SET_SIZE
        self.extended_weight = settings.ROUTER_EXTENDED_SET_WEIGHT
        self.decay_delta = settings.ROUTER_DECAY_DELTA
        self.decay_reset = settings.ROUTER_DECAY_RESET

    def route(self, circuit: Circuit) -> RoutedCircuit:
        """Route a native circuit with the identity initial layout."""
        num_physical = self.coupling.n
        if circuit.n > num_physical:
            raise CapacityError(f"Circuit needs {circuit.n} qubits, hardware has {num_physical}")
        if not is_native_circuit(circuit, self.spec):
            raise ValidationError("Routing expects a native circuit; rebase it first", field="gates")
        if any(g.is_two_physical for g in circuit.gates) and not self.coupling.is_connected():
            raise ValidationError("Routing needs a connected coupling map", field="edges")

        rng = np.random.default_rng(self.seed)
        dag = build_dag(circuit)
        gates = dag.gates
        indegree = {gid: dag.graph.in_degree(gid) for gid in gates}
        front: List[int] = sorted(gid for gid, deg in indegree.items() if deg == 0)

        # logical qubit i starts on physical qubit i
        l2p = list(range(num_physical))
        p2l = list(range(num_physical))
        decay = np.ones(num_physical)

        builder = CircuitBuilder(num_physical, spec=self.spec)
        swap_count = 0
        swaps_since_progress = 0

        while front:
            ready = [gid for gid in front if self._executable(gates[gid], l2p)]
            if ready:
                ready_set = set(ready)
                front = [gid for gid in front if gid not in ready_set]
                for gid in ready:
                    gate = gates[gid]
                    builder.add(gate.name, *(l2p[q] for q in gate.qubits), params=gate.params, tag=gate.tag)
                    for succ in dag.graph.successors(gid):
                        indegree[succ] -= 1
                        if indegree[succ] == 0:
                            front.append(succ)
                front.sort()
                decay[:] = 1.0
                swaps_since_progress = 0
                continue

            if swaps_since_progress >= 10 * num_physical:
                swap_count += self._release_valve(gates[front[0]], l2p, p2l, builder, swap_count)
                swaps_since_progress = 0
                continue

            p1, p2 = self._best_swap(front, gates, dag, indegree, l2p, decay)
            self._apply_swap(p1, p2, l2p, p2l, builder, swap_count)
            swap_count += 1
            swaps_since_progress += 1
            bump = self.decay_delta * (1.0 + rng.random())
            decay[p1] += bump
            decay[p2] += bump
            if swaps_since_progress % self.decay_reset == 0:
                decay[:] = 1.0

        routed = builder.build()
        logger.debug(
            "Routing complete",
            hardware=self.spec.name,
            seed=self.seed,
            swaps=swap_count,
            gates=len(routed),
        )
        return RoutedCircuit(
            circuit=routed,
            initial_layout=tuple(range(num_physical)),
            final_layout=tuple(l2p),
            swap_count=swap_count,
            seed=self.seed,
        )

    def _executable(self, gate: GateInstance, l2p: Sequence[int]) -> bool:
        if not gate.is_two_physical:
            return True
        a, b = gate.qubits
        return self.coupling.has_edge(l2p[a], l2p[b])

    def _extended_set(
        self,
        front: Sequence[int],
        gates: Dict[int, GateInstance],
        dag,
        indegree: Dict[int, int],
    ) -> List[int]:
        """Upcoming two-qubit gates reachable from the front, breadth first."""
        extended: List[int] = []
        pending: Dict[int, int] = {}
        queue = deque(front)
        seen: Set[int] = set(front)
        while queue and len(extended) < self.extended_size:
            gid = queue.popleft()
            for succ in sorted(dag.graph.successors(gid)):
                pending[succ] = pending.get(succ, indegree[succ]) - 1
                if pending[succ] == 0 and succ not in seen:
                    seen.add(succ)
                    queue.append(succ)
                    if gates[succ].is_two_physical:
                        extended.append(succ)
                        if len(extended) >= self.extended_size:
                            break
        return extended

    def _best_swap(
        self,
        front: Sequence[int],
        gates: Dict[int, GateInstance],
        dag,
        indegree: Dict[int, int],
        l2p: Sequence[int],
        decay: np.ndarray,
    ) -> Edge:
        front_2q = [gates[gid] for gid in front if gates[gid].is_two_physical]
        extended = [gates[gid] for gid in self._extended_set(front, gates, dag, indegree)]

        front_pairs = np.array([[l2p[g.qubits[0]], l2p[g.qubits[1]]] for g in front_2q], dtype=int)
        ext_pairs = (
            np.array([[l2p[g.qubits[0]], l2p[g.qubits[1]]] for g in extended], dtype=int)
            if extended
            else np.empty((0, 2), dtype=int)
        )

        candidates = sorted(
            {
                normalize_edge(p, nb)
                for pair in front_pairs
                for p in map(int, pair)
                for nb in self.coupling.neighbors[p]
            }
        )

        best: Optional[Tuple[float, Edge]] = None
        for p1, p2 in candidates:
            score = self._score(p1, p2, front_pairs, ext_pairs, decay)
            key = (round(score, SCORE_DECIMALS), (p1, p2))
            if best is None or key < best:
                best = key
        return best[1]

    def _score(
        self,
        p1: int,
        p2: int,
        front_pairs: np.ndarray,
        ext_pairs: np.ndarray,
        decay: np.ndarray,
    ) -> float:
        def swapped(pairs: np.ndarray) -> np.ndarray:
            return np.where(pairs == p1, p2, np.where(pairs == p2, p1, pairs))

        moved = swapped(front_pairs)
        cost = self.dist[moved[:, 0], moved[:, 1]].sum() / len(front_pairs)
        if len(ext_pairs):
            moved_ext = swapped(ext_pairs)
            cost += self.extended_weight * self.dist[moved_ext[:, 0], moved_ext[:, 1]].sum() / len(ext_pairs)
        return float(max(decay[p1], decay[p2]) * cost)

    def _apply_swap(
        self,
        p1: int,
        p2: int,
        l2p: List[int],
        p2l: List[int],
        builder: CircuitBuilder,
        index: int,
    ) -> None:
        tag = f"swap{index}"
        for name, qubits, params in native_ops("SWAP", (p1, p2), self.spec):
            builder.add(name, *qubits, params=params, tag=tag)
        l1, l2 = p2l[p1], p2l[p2]
        p2l[p1], p2l[p2] = l2, l1
        l2p[l1], l2p[l2] = p2, p1

    def _release_valve(
        self,
        gate: GateInstance,
        l2p: List[int],
        p2l: List[int],
        builder: CircuitBuilder,
        first_index: int,
    ) -> int:
        """Walk the first blocked gate's qubits together along a shortest path."""
        a, b = gate.qubits
        path = self.coupling.shortest_path(l2p[a], l2p[b])
        inserted = 0
        for i in range(len(path) - 2):
            self._apply_swap(path[i], path[i + 1], l2p, p2l, builder, first_index + inserted)
            inserted += 1
        logger.warning("Router release valve fired", gate=gate.id, swaps=inserted)
        return inserted


def route(circuit: Circuit, spec: HardwareSpec, seed: int = 0) -> RoutedCircuit:
    """Route a native circuit onto the hardware's coupling map.

    Args:
        circuit: Native circuit over at most ``spec.n`` logical qubits
        spec: Target hardware
        seed: Seed of the decay increments; routing is deterministic per seed

    Returns:
        RoutedCircuit over the hardware's physical qubits
    """
    return SabreRouter(spec, seed).route(circuit)

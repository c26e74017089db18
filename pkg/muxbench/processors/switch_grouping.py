"""
Assignment of qubits to shared single-qubit control switches.

All strategies produce ``ceil(n / k)`` groups whose sizes differ by at most one,
larger groups first.
"""
import math
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
import structlog

from muxbench.config import settings
from muxbench.models.grouping import SwitchGrouping
from muxbench.models.hardware import CouplingMap
from muxbench.models.options import GroupingStrategy
from muxbench.utils.error_handlers import ValidationError

logger = structlog.get_logger()


def balanced_sizes(n: int, k: int) -> List[int]:
    """Sizes of ``ceil(n / k)`` near-equal groups, larger first."""
    if k < 1 or k > n:
        raise ValidationError(f"Qubits per switch must lie in [1, {n}], got {k}", field="k")
    m = math.ceil(n / k)
    base, extra = divmod(n, m)
    return [base + 1] * extra + [base] * (m - extra)


def distinct_switch_ks(n: int) -> List[int]:
    """Smallest k for every reachable switch count ``ceil(n / k)``, ascending.

    Every k in 1..n gives the same switch count as one of these, and no two of them
    give the same count.
    """
    if n < 1:
        raise ValidationError(f"Need at least one qubit, got {n}", field="n")
    return sorted({math.ceil(n / m) for m in range(1, n + 1)})


def _blocks(order: Sequence[int], sizes: Sequence[int]) -> List[List[int]]:
    groups, start = [], 0
    for size in sizes:
        groups.append(sorted(int(q) for q in order[start:start + size]))
        start += size
    return groups


def trivial_grouping(n: int, k: int) -> SwitchGrouping:
    """Consecutive qubit indices share a switch."""
    groups = _blocks(range(n), balanced_sizes(n, k))
    return SwitchGrouping(k=k, n=n, groups=groups, strategy=GroupingStrategy.TRIVIAL.value)


def random_grouping(n: int, k: int, seed: int) -> SwitchGrouping:
    """Blocks of a seeded random permutation."""
    order = np.random.default_rng(seed).permutation(n)
    groups = _blocks(order, balanced_sizes(n, k))
    return SwitchGrouping(
        k=k, n=n, groups=groups, strategy=GroupingStrategy.RANDOM.value, metadata={"seed": seed}
    )


class ClusterRefiner:
    """Pairwise-swap refinement towards connected, densely coupled groups.

    The objective is lexicographic: number of connected groups first, then the
    number of couplers inside groups. Only strictly improving swaps are applied.
    """

    def __init__(self, coupling: CouplingMap, groups: List[List[int]]):
        self.coupling = coupling
        self.graph = coupling.graph
        self.groups: List[Set[int]] = [set(g) for g in groups]
        self.owner: Dict[int, int] = {q: i for i, g in enumerate(groups) for q in g}
        self.connected = [self._is_connected(g) for g in self.groups]

    def _is_connected(self, members: Set[int]) -> bool:
        if len(members) <= 1:
            return True
        return nx.is_connected(self.graph.subgraph(members))

    def _links(self, q: int, members: Set[int]) -> int:
        return sum(1 for nb in self.coupling.neighbors[q] if nb in members)

    def intra_edges(self) -> int:
        return sum(1 for a, b in self.coupling.edges if self.owner[a] == self.owner[b])

    def objective(self) -> Tuple[int, int]:
        return (sum(self.connected), self.intra_edges())

    def _candidates(self) -> List[Tuple[int, int]]:
        pairs = set()
        for u in range(self.coupling.n):
            for nb in self.coupling.neighbors[u]:
                if self.owner[nb] == self.owner[u]:
                    continue
                for v in self.groups[self.owner[nb]]:
                    pairs.add((min(u, v), max(u, v)))
        return sorted(pairs)

    def _gain(self, u: int, v: int) -> Tuple[Tuple[int, int], Tuple[bool, bool]]:
        ga, gb = self.owner[u], self.owner[v]
        new_a = (self.groups[ga] - {u}) | {v}
        new_b = (self.groups[gb] - {v}) | {u}
        edge_gain = (
            self._links(u, self.groups[gb] - {v}) - self._links(u, self.groups[ga] - {u})
            + self._links(v, self.groups[ga] - {u}) - self._links(v, self.groups[gb] - {v})
        )
        conn_a, conn_b = self._is_connected(new_a), self._is_connected(new_b)
        conn_gain = int(conn_a) + int(conn_b) - int(self.connected[ga]) - int(self.connected[gb])
        return (conn_gain, edge_gain), (conn_a, conn_b)

    def _apply(self, u: int, v: int, connectivity: Tuple[bool, bool]) -> None:
        ga, gb = self.owner[u], self.owner[v]
        self.groups[ga].remove(u)
        self.groups[ga].add(v)
        self.groups[gb].remove(v)
        self.groups[gb].add(u)
        self.owner[u], self.owner[v] = gb, ga
        self.connected[ga], self.connected[gb] = connectivity

    def refine(self, max_swaps: int) -> List[Tuple[int, int]]:
        """Apply best-improvement swaps; returns the objective after every step."""
        history = [self.objective()]
        for _ in range(max_swaps):
            best: Optional[Tuple[Tuple[int, int], int, int, Tuple[bool, bool]]] = None
            for u, v in self._candidates():
                gain, connectivity = self._gain(u, v)
                if gain > (0, 0) and (best is None or gain > best[0]):
                    best = (gain, u, v, connectivity)
            if best is None:
                break
            _, u, v, connectivity = best
            self._apply(u, v, connectivity)
            history.append(self.objective())
        return history

    def result(self) -> List[List[int]]:
        return [sorted(g) for g in self.groups]


def clustered_grouping(coupling: CouplingMap, k: int, seed: int) -> SwitchGrouping:
    """Groups of nearby qubits: breadth-first blocks refined by pairwise swaps.

    Args:
        coupling: Coupling map of the hardware
        k: Maximum qubits per switch
        seed: Chooses the breadth-first start qubit

    Returns:
        SwitchGrouping with ``metadata["objective_history"]``
    """
    n = coupling.n
    rng = np.random.default_rng(seed)
    start = int(rng.integers(n))

    order: List[int] = []
    seen: Set[int] = set()
    for root in [start] + list(range(n)):
        if root in seen:
            continue
        component = list(nx.bfs_tree(coupling.graph, root))
        order.extend(component)
        seen.update(component)

    refiner = ClusterRefiner(coupling, _blocks(order, balanced_sizes(n, k)))
    history = refiner.refine(settings.CLUSTER_SWAP_CAP_FACTOR * n)
    logger.debug("Clustered grouping refined", k=k, seed=seed, steps=len(history) - 1, objective=history[-1])
    return SwitchGrouping(
        k=k,
        n=n,
        groups=refiner.result(),
        strategy=GroupingStrategy.CLUSTERED.value,
        metadata={"seed": seed, "objective_history": [list(h) for h in history]},
    )


def _distance_coloring(coupling: CouplingMap, sizes: Sequence[int], d: int) -> Optional[List[List[int]]]:
    """Greedy placement keeping members of a group at least ``d`` hops apart."""
    dist = coupling.distance_matrix
    big, small = max(sizes), min(sizes)
    big_slots = sum(1 for s in sizes if s == big) if big != small else len(sizes)

    order = sorted(range(coupling.n), key=lambda q: (-coupling.degree(q), q))
    groups: List[List[int]] = [[] for _ in sizes]
    full = 0
    for q in order:
        placed = False
        for index in sorted(range(len(groups)), key=lambda i: (len(groups[i]), i)):
            group = groups[index]
            size_cap = big if full < big_slots else small
            if len(group) >= size_cap:
                continue
            if any(dist[q, other] < d for other in group):
                continue
            group.append(q)
            if len(group) == big and big != small:
                full += 1
            placed = True
            break
        if not placed:
            return None
    if big == small:
        return [sorted(g) for g in groups]
    ordered = sorted(groups, key=lambda g: (-len(g), min(g)))
    return [sorted(g) for g in ordered]


def dispersed_grouping(coupling: CouplingMap, k: int) -> SwitchGrouping:
    """Groups whose members are far apart: largest feasible distance-d colouring.

    Args:
        coupling: Coupling map of the hardware
        k: Maximum qubits per switch

    Returns:
        SwitchGrouping with ``metadata["d"]`` the guaranteed pairwise distance
    """
    n = coupling.n
    sizes = balanced_sizes(n, k)
    for d in range(max(coupling.diameter(), 1), 0, -1):
        groups = _distance_coloring(coupling, sizes, d)
        if groups is not None:
            logger.debug("Dispersed grouping found", k=k, d=d)
            return SwitchGrouping(
                k=k, n=n, groups=groups, strategy=GroupingStrategy.DISPERSED.value, metadata={"d": d}
            )
    raise ValidationError(f"No balanced grouping found for k={k}", field="k")


def build_grouping(strategy: GroupingStrategy, coupling: CouplingMap, k: int, seed: int = 0) -> SwitchGrouping:
    """Dispatch to the grouping strategy by name."""
    strategy = GroupingStrategy(strategy)
    if strategy is GroupingStrategy.TRIVIAL:
        return trivial_grouping(coupling.n, k)
    if strategy is GroupingStrategy.RANDOM:
        return random_grouping(coupling.n, k, seed)
    if strategy is GroupingStrategy.CLUSTERED:
        return clustered_grouping(coupling, k, seed)
    return dispersed_grouping(coupling, k)

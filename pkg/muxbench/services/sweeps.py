"""
Seed-parallel sweeps over k, gate counts, serializer options and duration ratios.

Work is split into one task per (circuit, seed): the circuit is translated and
routed once and then serialized for every k and option set. Tasks run through
``parallel_map``; rows are sorted afterwards so the output does not depend on
completion order.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from muxbench.models.circuit import Circuit
from muxbench.models.hardware import HardwareSpec
from muxbench.models.options import GroupingStrategy, RandomCircuitConfig, SerializerOptions
from muxbench.models.reports import OptimizationRow, OverheadReport, RatioRow, SweepTable
from muxbench.processors.benchgen import random_circuit
from muxbench.services.analysis import monotonicity_warnings, quartiles, summarize
from muxbench.services.pipeline import serialize_stage, translate_and_route
from muxbench.utils.error_handlers import ValidationError, error_context
from muxbench.utils.parallel import parallel_map

logger = structlog.get_logger()


@dataclass(frozen=True)
class SeedTask:
    """One circuit at one seed, serialized for every k and option set."""
    spec: HardwareSpec
    ks: Tuple[int, ...]
    strategy: GroupingStrategy
    seed: int
    options: Tuple[SerializerOptions, ...]
    name: str
    algo: str = ""
    circuit: Optional[Circuit] = None
    random: Optional[RandomCircuitConfig] = None


def run_seed_task(task: SeedTask) -> List[OverheadReport]:
    if task.circuit is not None:
        circuit = task.circuit
    elif task.random is not None:
        circuit = random_circuit(task.random, task.spec)
    else:
        raise ValidationError("Sweep task needs a circuit or a random circuit config", field="circuit")

    with error_context("sweep task", circuit=task.name, seed=task.seed):
        stage = translate_and_route(circuit, task.spec, task.seed, name=task.name, algo=task.algo)
        return [
            serialize_stage(stage, task.spec, k, task.strategy, task.seed, options).report
            for options in task.options
            for k in task.ks
        ]


def _sort_key(report: OverheadReport) -> Tuple:
    return (report.num_gates, report.circuit, report.k, report.order, report.hide_delays, report.seed)


def run_tasks(tasks: Sequence[SeedTask], jobs: int = 1) -> List[OverheadReport]:
    rows = [row for chunk in parallel_map(run_seed_task, tasks, jobs) for row in chunk]
    return sorted(rows, key=_sort_key)


def _check_grid(ks: Sequence[int], seeds: Sequence[int]) -> None:
    if not ks:
        raise ValidationError("At least one k is required", field="ks")
    if not seeds:
        raise ValidationError("At least one seed is required", field="seeds")


def sweep_table(rows: List[OverheadReport]) -> SweepTable:
    summary = summarize(rows)
    return SweepTable(rows=rows, summary=summary, warnings=monotonicity_warnings(summary))


def merge_tables(tables: Sequence[SweepTable]) -> SweepTable:
    """One table over the rows of several sweeps, re-sorted and re-summarized."""
    return sweep_table(sorted((row for table in tables for row in table.rows), key=_sort_key))


def sweep_k(
    circuit: Circuit,
    spec: HardwareSpec,
    strategy: GroupingStrategy,
    ks: Sequence[int],
    seeds: Sequence[int],
    opts: Optional[SerializerOptions] = None,
    jobs: int = 1,
    name: str = "circuit",
    algo: str = "",
) -> SweepTable:
    """Serialize one circuit for every k and seed.

    Args:
        circuit: Frontend or native circuit
        spec: Target hardware
        strategy: Switch grouping strategy
        ks: Qubits-per-switch values
        seeds: Router and grouping seeds
        opts: Serializer options
        jobs: Worker processes
        name: Circuit label
        algo: Algorithm label

    Returns:
        SweepTable with rows sorted by k and per-k median/IQR summaries
    """
    _check_grid(ks, seeds)
    tasks = [
        SeedTask(
            spec=spec,
            ks=tuple(sorted(ks)),
            strategy=GroupingStrategy(strategy),
            seed=seed,
            options=(opts or SerializerOptions(),),
            name=name,
            algo=algo,
            circuit=circuit,
        )
        for seed in seeds
    ]
    table = sweep_table(run_tasks(tasks, jobs))
    logger.info("k sweep complete", circuit=name, ks=len(ks), seeds=len(seeds), rows=len(table.rows))
    return table


def random_tasks(
    spec: HardwareSpec,
    gate_counts: Sequence[int],
    ks: Sequence[int],
    strategy: GroupingStrategy,
    seeds: Sequence[int],
    options: Sequence[SerializerOptions],
    w1: float = 0.7,
) -> List[SeedTask]:
    return [
        SeedTask(
            spec=spec,
            ks=tuple(sorted(ks)),
            strategy=GroupingStrategy(strategy),
            seed=seed,
            options=tuple(options),
            name=f"random_g{num_gates}",
            algo="random",
            random=RandomCircuitConfig(n=spec.n, num_gates=num_gates, w1=w1, w2=1.0 - w1, seed=seed),
        )
        for num_gates in sorted(gate_counts)
        for seed in seeds
    ]


def random_sweep(
    spec: HardwareSpec,
    gate_counts: Sequence[int],
    ks: Sequence[int],
    strategy: GroupingStrategy,
    seeds: Sequence[int],
    opts: Optional[SerializerOptions] = None,
    w1: float = 0.7,
    jobs: int = 1,
) -> SweepTable:
    """k sweep over freshly generated random circuits, one circuit per (gate count, seed)."""
    _check_grid(ks, seeds)
    if not gate_counts:
        raise ValidationError("At least one gate count is required", field="gates")
    tasks = random_tasks(spec, gate_counts, ks, strategy, seeds, [opts or SerializerOptions()], w1)
    table = sweep_table(run_tasks(tasks, jobs))
    logger.info(
        "Random sweep complete",
        hardware=spec.name,
        gate_counts=list(gate_counts),
        ks=list(ks),
        seeds=len(seeds),
    )
    return table


OPTIMIZATION_VARIANTS: Tuple[SerializerOptions, ...] = tuple(
    SerializerOptions(order_heuristic=order, hide_delays=hide)
    for order in ("by_index", "distance_to_next_2q")
    for hide in (False, True)
)


def optimization_study(
    spec: HardwareSpec,
    gate_counts: Sequence[int],
    ks: Sequence[int],
    seeds: Sequence[int],
    strategy: GroupingStrategy = GroupingStrategy.TRIVIAL,
    jobs: int = 1,
) -> Tuple[List[OptimizationRow], List[OverheadReport]]:
    """Serialized duration under both orderings with delay hiding off and on."""
    _check_grid(ks, seeds)
    tasks = random_tasks(spec, gate_counts, ks, strategy, seeds, OPTIMIZATION_VARIANTS)
    reports = run_tasks(tasks, jobs)

    buckets: Dict[Tuple[str, bool, int, int], List[int]] = {}
    for r in reports:
        buckets.setdefault((r.order, r.hide_delays, r.k, r.num_gates), []).append(r.t_serialized_ns)

    rows = []
    for (order, hide, k, num_gates), durations in sorted(buckets.items()):
        q1, median, q3 = quartiles(durations)
        rows.append(
            OptimizationRow(
                order=order,
                hide_delays=hide,
                k=k,
                num_gates=num_gates,
                median_duration_ns=median,
                q1_duration_ns=q1,
                q3_duration_ns=q3,
                samples=len(durations),
            )
        )
    logger.info("Optimization study complete", hardware=spec.name, rows=len(rows))
    return rows, reports


def ratio_study(
    spec: HardwareSpec,
    ratios: Sequence[float],
    ks: Sequence[int],
    num_gates: int,
    seeds: Sequence[int],
    strategy: GroupingStrategy = GroupingStrategy.TRIVIAL,
    jobs: int = 1,
) -> List[RatioRow]:
    """Relative overhead of one random-circuit set at several t_2q/t_1q ratios."""
    _check_grid(ks, seeds)
    if not ratios:
        raise ValidationError("At least one ratio is required", field="ratios")

    rows = []
    for ratio in sorted(ratios):
        scaled = spec.with_two_qubit_ratio(ratio)
        tasks = random_tasks(scaled, [num_gates], ks, strategy, seeds, [SerializerOptions()])
        reports = run_tasks(tasks, jobs)
        for k in sorted(set(ks)):
            at_k = [r for r in reports if r.k == k]
            q1, median, q3 = quartiles([r.rel_overhead for r in at_k])
            rows.append(
                RatioRow(
                    ratio=ratio,
                    k=k,
                    median_rel_overhead=median,
                    q1_rel_overhead=q1,
                    q3_rel_overhead=q3,
                    median_abs_overhead_ns=float(np.median([r.abs_overhead_ns for r in at_k])),
                    samples=len(at_k),
                )
            )
    logger.info("Ratio study complete", hardware=spec.name, ratios=list(ratios))
    return rows

"""
Compilation pipeline: translate, route, group, serialize, report.
"""
from dataclasses import dataclass
from typing import Optional

import structlog

from muxbench.models.circuit import Circuit
from muxbench.models.grouping import SwitchGrouping
from muxbench.models.hardware import HardwareSpec
from muxbench.models.options import GroupingStrategy, SerializerOptions
from muxbench.models.reports import OverheadReport
from muxbench.processors.dag import active_qubits, circuit_duration, gate_densities
from muxbench.processors.rebase import rebase_to_native
from muxbench.processors.router import RoutedCircuit, route
from muxbench.processors.serializer import SerializedCircuit, serialize
from muxbench.processors.switch_grouping import build_grouping
from muxbench.services.analysis import overhead_report

logger = structlog.get_logger()


@dataclass(frozen=True)
class RoutedStage:
    """A circuit translated and routed once, ready for serialization at any k."""
    name: str
    algo: str
    source: Circuit
    translated: Circuit
    routed: RoutedCircuit
    t_translated_ns: int
    t_routed_ns: int


@dataclass(frozen=True)
class CompiledRun:
    stage: RoutedStage
    grouping: SwitchGrouping
    serialized: SerializedCircuit
    report: OverheadReport


def translate_and_route(
    circuit: Circuit,
    spec: HardwareSpec,
    seed: int,
    name: str = "circuit",
    algo: str = "",
) -> RoutedStage:
    """Rebase a frontend circuit onto the hardware and route it."""
    translated = rebase_to_native(circuit, spec)
    routed = route(translated, spec, seed=seed)
    return RoutedStage(
        name=name,
        algo=algo,
        source=circuit,
        translated=translated,
        routed=routed,
        t_translated_ns=circuit_duration(translated),
        t_routed_ns=circuit_duration(routed.circuit),
    )


def serialize_stage(
    stage: RoutedStage,
    spec: HardwareSpec,
    k: int,
    strategy: GroupingStrategy,
    seed: int,
    options: Optional[SerializerOptions] = None,
) -> CompiledRun:
    """Group the hardware's qubits for one k and serialize the routed circuit."""
    options = options or SerializerOptions()
    grouping = build_grouping(strategy, spec.coupling, k, seed=seed)
    serialized = serialize(stage.routed, grouping, spec, options)

    routed_circuit = stage.routed.circuit
    densities = gate_densities(routed_circuit, width=max(active_qubits(routed_circuit), 1))
    report = overhead_report(
        t_translated_ns=stage.t_translated_ns,
        t_routed_ns=stage.t_routed_ns,
        t_serialized_ns=serialized.duration,
        densities=densities,
        circuit=stage.name,
        algo=stage.algo,
        n=stage.source.n,
        k=k,
        strategy=GroupingStrategy(strategy).value,
        seed=seed,
        num_gates=len(stage.source),
        order=options.order_heuristic.value,
        hide_delays=options.hide_delays,
    )
    return CompiledRun(stage=stage, grouping=grouping, serialized=serialized, report=report)


def compile_circuit(
    circuit: Circuit,
    spec: HardwareSpec,
    k: int,
    strategy: GroupingStrategy = GroupingStrategy.TRIVIAL,
    seed: int = 0,
    options: Optional[SerializerOptions] = None,
    name: str = "circuit",
    algo: str = "",
) -> CompiledRun:
    """Full pipeline for one circuit at one k.

    Args:
        circuit: Frontend or native circuit
        spec: Target hardware
        k: Qubits per switch
        strategy: Switch grouping strategy
        seed: Router and grouping seed
        options: Serializer options
        name: Circuit label for reports
        algo: Algorithm label for reports

    Returns:
        CompiledRun with every intermediate circuit and the overhead report
    """
    stage = translate_and_route(circuit, spec, seed, name=name, algo=algo)
    run = serialize_stage(stage, spec, k, strategy, seed, options)
    logger.debug(
        "Compiled circuit",
        circuit=name,
        k=k,
        strategy=run.report.strategy,
        routed_ns=run.report.t_routed_ns,
        serialized_ns=run.report.t_serialized_ns,
        overhead_ns=run.serialized.overhead_ns,
    )
    return run


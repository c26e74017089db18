"""
Hardware-level subcommands: coupler grouping, single-circuit serialization and spec export.
"""
import click
import structlog

from muxbench.commands.common import (
    build_serializer_options,
    finish_run,
    load_spec,
    output_dir,
    serializer_options,
    spec_option,
    strategy_option,
    tsw_option,
)
from muxbench.config import settings
from muxbench.models.grouping import write_grouping
from muxbench.models.options import GroupingStrategy
from muxbench.processors.coupler_grouping import reduction_factor, star_partition, verify_conflict_free
from muxbench.processors.qasm import emit_qasm, load_qasm
from muxbench.processors.serializer import switch_exclusive
from muxbench.services.hardware import save_hardware_spec
from muxbench.services.pipeline import compile_circuit
from muxbench.services.storage import write_json, write_text

logger = structlog.get_logger()


@click.command("couplers")
@spec_option
@click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")
def couplers(spec_name, out_dir):
    """Group couplers into stars sharing one control line each."""
    spec = load_spec(spec_name)
    grouping = star_partition(spec.coupling)
    factor = reduction_factor(spec.coupling, grouping)

    out = output_dir(out_dir)
    path = out / "couplers.json"
    write_grouping(grouping, path)
    click.echo(
        f"{spec.name}: {len(spec.coupling.edges)} couplers in {grouping.group_count} groups "
        f"(reduction factor {factor:.3f}{'' if grouping.minimal else ', greedy'})",
        err=True,
    )
    finish_run(out, "couplers", {"spec": spec_name}, [path], inputs=[spec_name] if spec_name.endswith(".json") else [])


@click.command("serialize")
@click.argument("qasm_path", type=click.Path(dir_okay=False))
@spec_option
@click.option("--k", "k", type=int, required=True, help="Qubits per switch.")
@strategy_option
@click.option("--seed", type=int, default=lambda: settings.DEFAULT_SEED, show_default="MUXBENCH_DEFAULT_SEED")
@tsw_option
@serializer_options
@click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")
def serialize(qasm_path, spec_name, k, strategy, seed, tsw_ns, order, hide_delays, out_dir):
    """Translate, route and serialize one QASM circuit."""
    spec = load_spec(spec_name, tsw_ns)
    circuit = load_qasm(qasm_path)
    options = build_serializer_options(order, hide_delays, tsw_ns)
    run = compile_circuit(
        circuit, spec, k, GroupingStrategy(strategy), seed, options, name=qasm_path, algo="qasm"
    )
    conflict_free, witness = verify_conflict_free(run.stage.routed.circuit, star_partition(spec.coupling))

    out = output_dir(out_dir)
    document = {
        "report": run.report.model_dump(),
        "inserted_sw": run.serialized.inserted_sw,
        "inserted_sdel": run.serialized.inserted_sdel,
        "hidden_sdel": run.serialized.hidden_sdel,
        "swaps": run.stage.routed.swap_count,
        "grouping": {"k": k, "strategy": strategy, "switches": run.grouping.m},
        "switch_exclusive": switch_exclusive(run.serialized.circuit, run.grouping),
        "couplers_conflict_free": conflict_free,
        "coupler_conflict": list(witness) if witness else None,
    }
    outputs = [
        write_text(out / "serialize.qasm", emit_qasm(run.serialized.circuit)),
        write_json(out / "serialize.report.json", document),
        write_grouping(run.grouping, out / "serialize.grouping.json"),
    ]
    click.echo(
        f"routed {run.report.t_routed_ns} ns -> serialized {run.report.t_serialized_ns} ns "
        f"(x{run.report.rel_overhead:.4f})",
        err=True,
    )
    finish_run(
        out,
        "serialize",
        {
            "qasm": qasm_path,
            "spec": spec_name,
            "k": k,
            "strategy": strategy,
            "seed": seed,
            "tsw_ns": tsw_ns,
            "order": order,
            "hide_delays": hide_delays,
        },
        outputs,
        seeds=[seed],
        inputs=[qasm_path],
    )


@click.command("export-spec")
@spec_option
@tsw_option
@click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")
def export_spec(spec_name, tsw_ns, out_dir):
    """Write a hardware spec as an editable JSON file."""
    spec = load_spec(spec_name, tsw_ns)
    out = output_dir(out_dir)
    path = save_hardware_spec(spec, out / f"{spec.name}.json")
    click.echo(f"{spec.name}: {spec.n} qubits, {len(spec.coupling.edges)} couplers, t_sw {spec.t_sw_ns} ns", err=True)
    finish_run(
        out,
        "export-spec",
        {"spec": spec_name, "tsw_ns": tsw_ns},
        [path],
        inputs=[spec_name] if spec_name.endswith(".json") else [],
    )

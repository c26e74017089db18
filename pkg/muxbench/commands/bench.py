"""
Benchmark subcommands: random circuits and algorithm circuits.
"""
from pathlib import Path
from typing import List, Tuple

import click
import numpy as np
import structlog

from muxbench.commands.common import (
    build_serializer_options,
    finish_run,
    ks_option,
    load_spec,
    output_dir,
    output_options,
    parse_int_list,
    print_table,
    seed_list,
    seed_options,
    serializer_options,
    spec_option,
    strategy_option,
    tsw_option,
)
from muxbench.config import settings
from muxbench.models.circuit import Circuit
from muxbench.models.options import GroupingStrategy
from muxbench.models.reports import BREAKDOWN_COLUMNS, CSV_COLUMNS, SUMMARY_COLUMNS, SweepTable
from muxbench.processors.benchgen import algo_circuit, algorithm_names
from muxbench.processors.qasm import load_qasm
from muxbench.services.analysis import breakdown, flatness, linear_trend
from muxbench.services.storage import write_csv
from muxbench.services.sweeps import merge_tables, random_sweep, sweep_k
from muxbench.utils.error_handlers import ValidationError

logger = structlog.get_logger()


def _write_tables(out: Path, stem: str, table: SweepTable) -> List[Path]:
    return [
        write_csv(out / f"{stem}.csv", CSV_COLUMNS, (r.csv_row() for r in table.rows)),
        write_csv(out / f"{stem}.summary.csv", SUMMARY_COLUMNS, (s.model_dump() for s in table.summary)),
        write_csv(
            out / f"{stem}.breakdown.csv",
            BREAKDOWN_COLUMNS,
            (b.model_dump() for b in breakdown(table.rows)),
        ),
    ]


def _print_summary(title: str, table: SweepTable) -> None:
    print_table(
        title,
        ["circuit", "k", "median abs (ns)", "IQR abs (ns)", "median rel"],
        (
            (
                s.circuit,
                s.k,
                s.median_abs_overhead_ns,
                s.q3_abs_overhead_ns - s.q1_abs_overhead_ns,
                s.median_rel_overhead,
            )
            for s in table.summary
        ),
    )
    for warning in table.warnings:
        click.echo(f"warning: {warning}", err=True)


@click.command("bench-random")
@spec_option
@click.option("--gates", default="1000,2000,4000", show_default=True, help="Comma-separated gate counts.")
@ks_option("1,2,4")
@strategy_option
@seed_options
@tsw_option
@serializer_options
@click.option("--w1", type=float, default=lambda: settings.RANDOM_W1, help="Probability of a single-qubit gate.")
@output_options
def bench_random(
    spec_name, gates, ks, strategy, seed, num_seeds, tsw_ns, order, hide_delays, w1, out_dir, jobs
):
    """Serialization overhead of random circuits over gate counts and k."""
    spec = load_spec(spec_name, tsw_ns)
    gate_counts = parse_int_list(gates, "gates")
    k_values = parse_int_list(ks, "ks")
    seeds = seed_list(seed, num_seeds)
    options = build_serializer_options(order, hide_delays, tsw_ns)

    table = random_sweep(
        spec, gate_counts, k_values, GroupingStrategy(strategy), seeds, options, w1=w1, jobs=jobs
    )
    out = output_dir(out_dir)
    outputs = _write_tables(out, "bench-random", table)

    _print_summary(f"Random circuits on {spec.name}", table)
    if len(set(gate_counts)) >= 2:
        trend_rows = []
        for k in sorted(set(k_values)):
            cells = [[r for r in table.rows if r.k == k and r.num_gates == n] for n in sorted(set(gate_counts))]
            medians = [float(np.median([r.abs_overhead_ns for r in cell])) for cell in cells]
            if any(m > 0 for m in medians):
                trend = linear_trend(sorted(set(gate_counts)), medians)
                rel = [float(np.median([r.rel_overhead for r in cell])) for cell in cells]
                trend_rows.append((k, trend.slope, trend.r_squared, flatness(rel)))
        print_table("Overhead vs gate count", ["k", "ns per gate", "R^2", "rel std/mean"], trend_rows)

    finish_run(
        out,
        "bench-random",
        {
            "spec": spec_name,
            "gates": gate_counts,
            "ks": k_values,
            "strategy": strategy,
            "seed": seed,
            "seeds": num_seeds,
            "tsw_ns": tsw_ns,
            "order": order,
            "hide_delays": hide_delays,
            "w1": w1,
        },
        outputs,
        seeds=seeds,
        inputs=[spec_name] if spec_name.endswith(".json") else [],
    )


def _resolve_circuits(targets: Tuple[str, ...], n: int, seed: int) -> List[Tuple[str, str, Circuit]]:
    circuits = []
    for target in targets:
        if target.endswith(".qasm"):
            circuits.append((Path(target).stem, "qasm", load_qasm(target)))
        elif target in algorithm_names():
            circuits.append((f"{target}{n}", target, algo_circuit(target, n, seed)))
        else:
            raise ValidationError(
                f"Unknown algorithm '{target}'; use one of {algorithm_names()} or a .qasm file",
                field="algo",
            )
    return circuits


@click.command("bench-algo")
@click.argument("targets", nargs=-1, required=True)
@spec_option
@click.option("--n", "num_qubits", type=int, default=10, show_default=True, help="Qubits of built-in algorithms.")
@ks_option("1,2,4")
@strategy_option
@seed_options
@tsw_option
@serializer_options
@output_options
def bench_algo(
    targets, spec_name, num_qubits, ks, strategy, seed, num_seeds, tsw_ns, order, hide_delays, out_dir, jobs
):
    """Serialization overhead of algorithm circuits (built-in names or QASM files)."""
    spec = load_spec(spec_name, tsw_ns)
    k_values = tuple(sorted(parse_int_list(ks, "ks")))
    seeds = seed_list(seed, num_seeds)
    options = build_serializer_options(order, hide_delays, tsw_ns)

    table = merge_tables([
        sweep_k(
            circuit, spec, GroupingStrategy(strategy), k_values, seeds, options, jobs=jobs, name=name, algo=algo
        )
        for name, algo, circuit in _resolve_circuits(targets, num_qubits, seed)
    ])
    out = output_dir(out_dir)
    outputs = _write_tables(out, "bench-algo", table)
    _print_summary(f"Algorithm circuits on {spec.name}", table)

    finish_run(
        out,
        "bench-algo",
        {
            "targets": list(targets),
            "spec": spec_name,
            "n": num_qubits,
            "ks": list(k_values),
            "strategy": strategy,
            "seed": seed,
            "seeds": num_seeds,
            "tsw_ns": tsw_ns,
            "order": order,
            "hide_delays": hide_delays,
        },
        outputs,
        seeds=seeds,
        inputs=[t for t in targets if t.endswith(".qasm")] + ([spec_name] if spec_name.endswith(".json") else []),
    )

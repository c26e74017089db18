"""
Parameter studies: two-qubit/one-qubit duration ratio and serializer optimizations.
"""
import click
import structlog

from muxbench.commands.common import (
    finish_run,
    ks_option,
    load_spec,
    output_dir,
    output_options,
    parse_float_list,
    parse_int_list,
    print_table,
    seed_list,
    seed_options,
    spec_option,
    strategy_option,
    tsw_option,
)
from muxbench.models.options import GroupingStrategy
from muxbench.models.reports import OPTIMIZATION_COLUMNS, RATIO_COLUMNS
from muxbench.services.storage import write_csv
from muxbench.services.sweeps import optimization_study, ratio_study

logger = structlog.get_logger()


@click.command("ratio")
@spec_option
@click.option("--ratios", default="1,3,10,30", show_default=True, help="Comma-separated t_2q/t_1q ratios.")
@ks_option("4,16")
@click.option("--gates", "num_gates", type=int, default=1000, show_default=True, help="Gates per random circuit.")
@strategy_option
@seed_options
@tsw_option
@output_options
def ratio(spec_name, ratios, ks, num_gates, strategy, seed, num_seeds, tsw_ns, out_dir, jobs):
    """Relative overhead of a fixed random-circuit set at several t_2q/t_1q ratios."""
    spec = load_spec(spec_name, tsw_ns)
    seeds = seed_list(seed, num_seeds)
    rows = ratio_study(
        spec,
        parse_float_list(ratios, "ratios"),
        parse_int_list(ks, "ks"),
        num_gates,
        seeds,
        GroupingStrategy(strategy),
        jobs=jobs,
    )

    out = output_dir(out_dir)
    outputs = [write_csv(out / "ratio.csv", RATIO_COLUMNS, (r.model_dump() for r in rows))]
    print_table(
        f"t_2q/t_1q study on {spec.name}",
        ["ratio", "k", "median rel", "IQR rel"],
        ((r.ratio, r.k, r.median_rel_overhead, r.q3_rel_overhead - r.q1_rel_overhead) for r in rows),
    )
    finish_run(
        out,
        "ratio",
        {
            "spec": spec_name,
            "ratios": ratios,
            "ks": ks,
            "gates": num_gates,
            "strategy": strategy,
            "seed": seed,
            "seeds": num_seeds,
            "tsw_ns": tsw_ns,
        },
        outputs,
        seeds=seeds,
    )


@click.command("optimize")
@spec_option
@click.option("--gates", default="1000,10000", show_default=True, help="Comma-separated gate counts.")
@ks_option("13,121")
@strategy_option
@seed_options
@tsw_option
@output_options
def optimize(spec_name, gates, ks, strategy, seed, num_seeds, tsw_ns, out_dir, jobs):
    """Serialized duration under index/distance ordering with delay hiding off and on."""
    spec = load_spec(spec_name, tsw_ns)
    seeds = seed_list(seed, num_seeds)
    rows, _ = optimization_study(
        spec,
        parse_int_list(gates, "gates"),
        parse_int_list(ks, "ks"),
        seeds,
        GroupingStrategy(strategy),
        jobs=jobs,
    )

    out = output_dir(out_dir)
    outputs = [
        write_csv(
            out / "optimize.csv",
            OPTIMIZATION_COLUMNS,
            ({**r.model_dump(), "hide_delays": "on" if r.hide_delays else "off"} for r in rows),
        )
    ]
    print_table(
        f"Serializer optimizations on {spec.name}",
        ["gates", "k", "order", "hide", "median (ns)"],
        (
            (r.num_gates, r.k, r.order, "on" if r.hide_delays else "off", r.median_duration_ns)
            for r in sorted(rows, key=lambda r: (r.num_gates, r.k, r.order, r.hide_delays))
        ),
    )
    finish_run(
        out,
        "optimize",
        {
            "spec": spec_name,
            "gates": gates,
            "ks": ks,
            "strategy": strategy,
            "seed": seed,
            "seeds": num_seeds,
            "tsw_ns": tsw_ns,
        },
        outputs,
        seeds=seeds,
    )

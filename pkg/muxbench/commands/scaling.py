"""
Scaling-model subcommands: layered toy model and queueing Monte Carlo.
"""
import click
import structlog

from muxbench.commands.common import (
    finish_run,
    ks_option,
    output_dir,
    output_options,
    parse_int_list,
    print_table,
)
from muxbench.config import settings
from muxbench.models.reports import QUEUE_COLUMNS, TOY_COLUMNS
from muxbench.models.scaling import ToyModelConfig
from muxbench.processors.switch_grouping import distinct_switch_ks
from muxbench.services.hardware import square_grid
from muxbench.services.scaling import queue_sweep, toy_model_sweep
from muxbench.services.storage import write_csv, write_json

logger = structlog.get_logger()


@click.command("toy")
@click.option("--grid-size", type=int, default=5, show_default=True, help="Side length of the square grid.")
@click.option("--depth", type=int, default=100, show_default=True, help="Layers per trial.")
@click.option("--p1", type=float, default=0.2, show_default=True, help="Per-qubit 1q gate probability.")
@click.option("--p2", type=float, default=0.01, show_default=True, help="Per-edge 2q gate probability.")
@click.option("--t2", type=float, default=10.0, show_default=True, help="2q gate time in 1q gate units.")
@click.option(
    "--ks", default=None,
    help="Comma-separated qubits-per-switch values (default: every k that changes the switch count).",
)
@click.option(
    "--trials", type=int, default=lambda: settings.TOY_DEFAULT_TRIALS,
    show_default="MUXBENCH_TOY_DEFAULT_TRIALS", help="Trials per k.",
)
@click.option("--seed", type=int, default=lambda: settings.DEFAULT_SEED, show_default="MUXBENCH_DEFAULT_SEED")
@click.option(
    "--no2q-branch", type=click.Choice(["per_switch", "total"]), default="per_switch", show_default=True,
    help="Timing of layers without two-qubit gates.",
)
@output_options
def toy(grid_size, depth, p1, p2, t2, ks, trials, seed, no2q_branch, out_dir, jobs):
    """Overhead factor of the layered toy model over k."""
    cfg = ToyModelConfig(
        grid=square_grid(grid_size, grid_size),
        depth=depth,
        p1=p1,
        p2=p2,
        t2=t2,
        seed=seed,
        no2q_branch=no2q_branch,
    )
    k_values = parse_int_list(ks, "ks") if ks else distinct_switch_ks(cfg.grid.n)
    sweep = toy_model_sweep(cfg, k_values, trials, jobs=jobs)

    out = output_dir(out_dir)
    outputs = [write_csv(out / "toy.csv", TOY_COLUMNS, (r.model_dump() for r in sweep.rows))]
    if sweep.fit is not None:
        outputs.append(write_json(out / "toy.fit.json", sweep.fit.model_dump()))
    print_table("Toy model", ["k", "mean factor", "std"], ((r.k, r.mean_factor, r.std_factor) for r in sweep.rows))

    finish_run(
        out,
        "toy",
        {
            "grid_size": grid_size,
            "depth": depth,
            "p1": p1,
            "p2": p2,
            "t2": t2,
            "ks": [r.k for r in sweep.rows],
            "trials": trials,
            "seed": seed,
            "no2q_branch": no2q_branch,
        },
        outputs,
        seeds=[seed],
    )


@click.command("queue")
@ks_option("1,2,4,8,16,32,64,128")
@click.option("--eta", type=float, default=1.0, show_default=True, help="Asymptotic decay rate.")
@click.option(
    "--trials", type=int, default=lambda: settings.QUEUE_DEFAULT_TRIALS,
    show_default="MUXBENCH_QUEUE_DEFAULT_TRIALS", help="Monte Carlo trials per k.",
)
@click.option("--seed", type=int, default=lambda: settings.DEFAULT_SEED, show_default="MUXBENCH_DEFAULT_SEED")
@output_options
def queue(ks, eta, trials, seed, out_dir, jobs):
    """Expected maximum waiting time of k exponential clients: Monte Carlo and exact."""
    sweep = queue_sweep(parse_int_list(ks, "ks"), eta, trials, seed, jobs=jobs)

    out = output_dir(out_dir)
    outputs = [write_csv(out / "queue.csv", QUEUE_COLUMNS, (r.model_dump() for r in sweep.rows))]
    print_table(
        "Maximum waiting time",
        ["k", "Monte Carlo", "stderr", "H_k / eta"],
        ((r.k, r.mc_mean, r.stderr, r.analytic) for r in sweep.rows),
    )

    finish_run(
        out,
        "queue",
        {"ks": [r.k for r in sweep.rows], "eta": eta, "trials": trials, "seed": seed},
        outputs,
        seeds=[seed],
    )

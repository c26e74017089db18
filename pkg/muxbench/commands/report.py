"""
Subcommands working on benchmark CSV files: model fit and plots.
"""
import json
from pathlib import Path

import click
import structlog

from muxbench.commands.common import finish_run, output_dir
from muxbench.services.analysis import fit_reports, read_reports
from muxbench.services.hardware import resolve_spec
from muxbench.services.manifest import find_manifest
from muxbench.services.plotting import PLOTS, render_plot
from muxbench.services.storage import write_json

logger = structlog.get_logger()


def _inputs(csv_path):
    # the manifest that produced the table is hashed along with it
    source = find_manifest(csv_path)
    return [csv_path] if source is None else [csv_path, str(source)]


@click.command("fit")
@click.argument("csv_path", type=click.Path(dir_okay=False))
@click.option("--spec", "spec_name", default="grid5", show_default=True, help="Hardware providing t_1q.")
@click.option("--t1q-ns", type=float, default=None, help="Single-qubit gate time; overrides --spec.")
@click.option("--circuit", default=None, help="Fit only rows of this circuit.")
@click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")
def fit(csv_path, spec_name, t1q_ns, circuit, out_dir):
    """Fit T(k) = p N1 t_1q ln(k) to the median overhead per k."""
    t_1q = t1q_ns if t1q_ns is not None else resolve_spec(spec_name).t_1q
    result = fit_reports(read_reports(csv_path), t_1q, circuit=circuit)
    document = result.model_dump()

    out = output_dir(out_dir)
    outputs = [write_json(out / "fit.json", document)]
    click.echo(json.dumps(document, sort_keys=True), err=True)
    logger.info("Fit complete", p=result.p, stderr=result.stderr, log_preferred=result.log_preferred)

    finish_run(
        out,
        "fit",
        {"csv": csv_path, "spec": spec_name, "t1q_ns": t_1q, "circuit": circuit},
        outputs,
        inputs=_inputs(csv_path),
    )


@click.command("plot")
@click.argument("csv_path", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice(sorted(PLOTS)), default="lines", show_default=True)
@click.option("--k", type=int, default=None, help="Restrict the histogram to one k.")
@click.option("--bins", type=int, default=20, show_default=True, help="Histogram bins.")
@click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")
def plot(csv_path, kind, k, bins, out_dir):
    """Render a benchmark CSV as an SVG chart."""
    reports = read_reports(csv_path)
    kwargs = {"bins": bins, "k": k} if kind == "hist" else {}

    out = output_dir(out_dir)
    path = render_plot(kind, reports, Path(out) / f"plot-{kind}.svg", **kwargs)
    finish_run(
        out,
        f"plot-{kind}",
        {"csv": csv_path, "kind": kind, "k": k, "bins": bins},
        [path],
        inputs=_inputs(csv_path),
    )

"""
Options and helpers shared by the subcommands.
"""
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import click
import structlog
from rich.console import Console
from rich.table import Table

from muxbench.config import settings
from muxbench.models.hardware import HardwareSpec
from muxbench.models.options import GroupingStrategy, OrderHeuristic, SerializerOptions
from muxbench.services.hardware import resolve_spec
from muxbench.services.manifest import build_manifest, write_manifest
from muxbench.utils.error_handlers import StorageError, ValidationError
from muxbench.utils.rng import derive_seeds

logger = structlog.get_logger()

console = Console(stderr=True)

STRATEGIES = [s.value for s in GroupingStrategy]


def parse_int_list(value: str, name: str) -> List[int]:
    """Comma-separated integers, e.g. ``2,4,8``."""
    try:
        items = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"--{name} expects comma-separated integers, got '{value}'", field=name)
    if not items:
        raise ValidationError(f"--{name} needs at least one value", field=name)
    return items


def parse_float_list(value: str, name: str) -> List[float]:
    try:
        items = [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"--{name} expects comma-separated numbers, got '{value}'", field=name)
    if not items:
        raise ValidationError(f"--{name} needs at least one value", field=name)
    return items


def spec_option(f: Callable) -> Callable:
    return click.option(
        "--spec", "spec_name", default="grid5", show_default=True,
        help="Hardware preset (grid5, grid11, eagle) or a hardware JSON file.",
    )(f)


def tsw_option(f: Callable) -> Callable:
    return click.option("--tsw-ns", type=int, default=None, help="Switch settling time override in ns.")(f)


def ks_option(default: str) -> Callable:
    return click.option("--ks", default=default, show_default=True, help="Comma-separated qubits-per-switch values.")


def strategy_option(f: Callable) -> Callable:
    return click.option(
        "--strategy", type=click.Choice(STRATEGIES), default="trivial", show_default=True,
        help="Switch grouping strategy.",
    )(f)


def seed_options(f: Callable) -> Callable:
    f = click.option(
        "--seeds", "num_seeds", type=int, default=lambda: settings.DEFAULT_SEEDS,
        show_default="MUXBENCH_DEFAULT_SEEDS", help="Number of seeds (sub-streams of --seed).",
    )(f)
    return click.option(
        "--seed", type=int, default=lambda: settings.DEFAULT_SEED,
        show_default="MUXBENCH_DEFAULT_SEED", help="Master seed.",
    )(f)


def serializer_options(f: Callable) -> Callable:
    f = click.option(
        "--order", type=click.Choice(["index", "dist2q"]), default="dist2q", show_default=True,
        help="Ordering of single-qubit gates sharing a switch.",
    )(f)
    return click.option(
        "--hide-delays", type=click.Choice(["on", "off"]), default="on", show_default=True,
        help="Omit switch delays hidden behind two-qubit gates.",
    )(f)


def output_options(f: Callable) -> Callable:
    f = click.option("--out", "out_dir", default=None, help="Output directory (default MUXBENCH_OUTPUT_PATH).")(f)
    return click.option(
        "--jobs", type=int, default=lambda: settings.DEFAULT_JOBS,
        show_default="MUXBENCH_DEFAULT_JOBS", help="Worker processes.",
    )(f)


def load_spec(spec_name: str, tsw_ns: Optional[int] = None) -> HardwareSpec:
    return resolve_spec(spec_name, t_sw_ns=tsw_ns)


def build_serializer_options(order: str, hide_delays: str, tsw_ns: Optional[int] = None) -> SerializerOptions:
    return SerializerOptions(
        order_heuristic=OrderHeuristic.from_flag(order),
        hide_delays=hide_delays == "on",
        t_sw_ns=tsw_ns,
    )


def seed_list(seed: int, num_seeds: int) -> List[int]:
    if num_seeds < 1:
        raise ValidationError("--seeds must be at least 1", field="seeds")
    return derive_seeds(seed, num_seeds)


def output_dir(out_dir: Optional[str]) -> Path:
    try:
        return settings.output_dir(out_dir)
    except OSError as e:
        raise StorageError(f"Cannot create output directory: {e}", path=out_dir or settings.OUTPUT_PATH)


def finish_run(
    out: Path,
    command: str,
    parameters: Dict[str, Any],
    outputs: Sequence[Path],
    seeds: Sequence[int] = (),
    inputs: Iterable[str] = (),
) -> Path:
    """Write the run manifest and echo every output path on stdout."""
    manifest = build_manifest(command, parameters, seeds=seeds, inputs=inputs, outputs=outputs)
    path = write_manifest(out, manifest)
    for output in outputs:
        click.echo(str(output))
    click.echo(str(path))
    return path


def print_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Rich summary table on stderr."""
    table = Table(title=title)
    for column in columns:
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*(f"{v:.4g}" if isinstance(v, float) else str(v) for v in row))
    console.print(table)

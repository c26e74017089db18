"""
SVG charts of benchmark tables.

Figures are built on a bare ``matplotlib.figure.Figure`` (no pyplot state, no
display) and saved with a fixed hash salt and no date, so equal input gives
byte-identical SVG.
"""
from collections import defaultdict
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

import matplotlib
import numpy as np
import structlog
from matplotlib.figure import Figure

from muxbench.config import settings
from muxbench.models.reports import OverheadReport
from muxbench.services.analysis import breakdown, histogram_bins
from muxbench.utils.error_handlers import DegenerateInputError, StorageError, ValidationError

logger = structlog.get_logger()

FIGSIZE = (6.4, 4.0)


def _require(reports: Sequence[OverheadReport]) -> None:
    if not reports:
        raise DegenerateInputError("Nothing to plot: the table has no rows")


def plot_lines(reports: Sequence[OverheadReport]) -> Figure:
    """Median absolute overhead against routed gate count, one line per k."""
    _require(reports)
    by_k: Dict[int, Dict[str, List[OverheadReport]]] = defaultdict(lambda: defaultdict(list))
    for r in reports:
        by_k[r.k][r.circuit].append(r)

    fig = Figure(figsize=FIGSIZE)
    ax = fig.add_subplot()
    for k in sorted(by_k):
        points = sorted(
            (
                float(np.median([r.densities.N1 + r.densities.N2 for r in group])),
                float(np.median([r.abs_overhead_ns for r in group])),
            )
            for group in by_k[k].values()
        )
        xs, ys = zip(*points)
        ax.plot(xs, ys, marker="o", label=f"k={k}")
    ax.set_xlabel("routed gate count")
    ax.set_ylabel("median absolute overhead (ns)")
    ax.legend(fontsize="small")
    ax.grid(True, alpha=0.3)
    return fig


def plot_hist(reports: Sequence[OverheadReport], bins: int = 20, k: Optional[int] = None) -> Figure:
    """Histogram of relative overheads, optionally at a single k."""
    selected = [r for r in reports if k is None or r.k == k]
    _require(selected)
    counts, edges = histogram_bins([r.rel_overhead for r in selected], bins=bins)

    fig = Figure(figsize=FIGSIZE)
    ax = fig.add_subplot()
    ax.bar(edges[:-1], counts, width=np.diff(edges), align="edge", edgecolor="black", linewidth=0.5)
    ax.set_xlabel("relative overhead")
    ax.set_ylabel("circuits")
    if k is not None:
        ax.set_title(f"k={k}")
    return fig


def plot_breakdown(reports: Sequence[OverheadReport]) -> Figure:
    """Stacked median duration components per (circuit, k)."""
    _require(reports)
    rows = breakdown(reports)
    labels = [f"{row.circuit}\nk={row.k}" for row in rows]
    x = np.arange(len(rows))
    translated = np.array([row.translated_ns for row in rows])
    routing = np.array([row.routing_overhead_ns for row in rows])
    serialization = np.array([row.serialization_overhead_ns for row in rows])

    fig = Figure(figsize=(max(FIGSIZE[0], 0.6 * len(rows)), FIGSIZE[1]))
    ax = fig.add_subplot()
    ax.bar(x, translated, label="translated")
    ax.bar(x, routing, bottom=translated, label="routing")
    ax.bar(x, serialization, bottom=translated + routing, label="serialization")
    ax.set_xticks(x)
    ax.set_xticklabels(labels, fontsize="x-small")
    ax.set_ylabel("median duration (ns)")
    ax.legend(fontsize="small")
    return fig


PLOTS: Dict[str, Callable[..., Figure]] = {
    "lines": plot_lines,
    "hist": plot_hist,
    "breakdown": plot_breakdown,
}


def save_svg(fig: Figure, path: Union[str, Path]) -> Path:
    """Write a figure as standalone, reproducible SVG."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context({"svg.hashsalt": settings.PLOT_HASH_SALT}):
            fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise StorageError(f"Cannot write plot: {e}", path=str(path))
    logger.info("Wrote plot", path=str(path))
    return path


def render_plot(kind: str, reports: Sequence[OverheadReport], path: Union[str, Path], **kwargs) -> Path:
    if kind not in PLOTS:
        raise ValidationError(f"Unknown plot kind '{kind}'; choose from {sorted(PLOTS)}", field="kind")
    return save_svg(PLOTS[kind](reports, **kwargs), path)

"""
Overhead reports, sweep summaries and scaling-model fits.
"""
import math
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import ValidationError as PydanticValidationError
from scipy import stats

from muxbench.models.reports import (
    BreakdownRow,
    DensityReport,
    FitResult,
    LinearTrend,
    OverheadReport,
    SweepSummary,
)
from muxbench.services.storage import read_csv
from muxbench.utils.error_handlers import (
    DegenerateFitError,
    DegenerateInputError,
    PipelineInconsistencyError,
    ValidationError,
)

logger = structlog.get_logger()

MIN_FIT_POINTS = 3


def overhead_report(
    t_translated_ns: int,
    t_routed_ns: int,
    t_serialized_ns: int,
    densities: DensityReport,
    *,
    circuit: str,
    algo: str,
    n: int,
    k: int,
    strategy: str,
    seed: int,
    num_gates: int = 0,
    order: str = "distance_to_next_2q",
    hide_delays: bool = True,
) -> OverheadReport:
    """Overhead of serialization relative to the routed circuit.

    Raises:
        PipelineInconsistencyError: durations are not ordered
            translated <= routed <= serialized
    """
    if t_routed_ns < t_translated_ns:
        raise PipelineInconsistencyError(
            f"Routed duration {t_routed_ns} ns is below translated duration {t_translated_ns} ns",
            stage="route",
        )
    if t_serialized_ns < t_routed_ns:
        raise PipelineInconsistencyError(
            f"Serialized duration {t_serialized_ns} ns is below routed duration {t_routed_ns} ns",
            stage="serialize",
        )
    if k == 1 and t_serialized_ns != t_routed_ns:
        raise PipelineInconsistencyError("One qubit per switch must not add overhead", stage="serialize")

    rel = t_serialized_ns / t_routed_ns if t_routed_ns > 0 else 1.0
    return OverheadReport(
        circuit=circuit,
        algo=algo,
        n=n,
        k=k,
        strategy=strategy,
        seed=seed,
        t_translated_ns=t_translated_ns,
        t_routed_ns=t_routed_ns,
        t_serialized_ns=t_serialized_ns,
        abs_overhead_ns=t_serialized_ns - t_routed_ns,
        rel_overhead=rel,
        densities=densities,
        num_gates=num_gates,
        order=order,
        hide_delays=hide_delays,
    )


def report_from_row(row: Dict[str, str]) -> OverheadReport:
    """Rebuild a report from one benchmark CSV row."""
    try:
        densities = DensityReport(
            n=int(row["n"]),
            N1=int(row["N1"]),
            N2=int(row["N2"]),
            D=int(row["D"]),
            rho1=float(row["rho1"]),
            rho2=float(row["rho2"]),
        )
        return OverheadReport(
            circuit=row["circuit"],
            algo=row["algo"],
            n=int(row["n"]),
            k=int(row["k"]),
            strategy=row["strategy"],
            seed=int(row["seed"]),
            t_translated_ns=int(row["t_translated_ns"]),
            t_routed_ns=int(row["t_routed_ns"]),
            t_serialized_ns=int(row["t_serialized_ns"]),
            abs_overhead_ns=int(row["abs_overhead_ns"]),
            rel_overhead=float(row["rel_overhead"]),
            densities=densities,
        )
    except (KeyError, TypeError, ValueError, PydanticValidationError) as e:
        raise ValidationError(f"Malformed benchmark row: {e}", field="csv")


def read_reports(path: str) -> List[OverheadReport]:
    """Load a benchmark CSV; empty or malformed files are rejected."""
    return [report_from_row(row) for row in read_csv(path)]


def quartiles(values: Sequence[float]) -> Tuple[float, float, float]:
    """(q1, median, q3) with linear interpolation."""
    q1, median, q3 = np.percentile(np.asarray(values, dtype=float), [25, 50, 75])
    return float(q1), float(median), float(q3)


def summarize(reports: Iterable[OverheadReport]) -> List[SweepSummary]:
    """Median and interquartile range per (circuit, k, strategy), sorted."""
    buckets: Dict[Tuple[str, int, str], List[OverheadReport]] = defaultdict(list)
    for report in reports:
        buckets[(report.circuit, report.k, report.strategy)].append(report)

    summaries = []
    for (circuit, k, strategy), group in sorted(buckets.items()):
        a1, a2, a3 = quartiles([r.abs_overhead_ns for r in group])
        r1, r2, r3 = quartiles([r.rel_overhead for r in group])
        summaries.append(
            SweepSummary(
                circuit=circuit,
                k=k,
                strategy=strategy,
                samples=len(group),
                median_abs_overhead_ns=a2,
                q1_abs_overhead_ns=a1,
                q3_abs_overhead_ns=a3,
                median_rel_overhead=r2,
                q1_rel_overhead=r1,
                q3_rel_overhead=r3,
                median_routed_ns=float(np.median([r.t_routed_ns for r in group])),
            )
        )
    return summaries


def monotonicity_warnings(summaries: Sequence[SweepSummary]) -> List[str]:
    """Flag circuits whose median absolute overhead drops as k grows."""
    by_circuit: Dict[Tuple[str, str], List[SweepSummary]] = defaultdict(list)
    for s in summaries:
        by_circuit[(s.circuit, s.strategy)].append(s)

    warnings = []
    for (circuit, strategy), rows in sorted(by_circuit.items()):
        rows = sorted(rows, key=lambda s: s.k)
        for prev, cur in zip(rows, rows[1:]):
            if cur.median_abs_overhead_ns < prev.median_abs_overhead_ns:
                message = (
                    f"{circuit} ({strategy}): median overhead falls from "
                    f"{prev.median_abs_overhead_ns:g} ns at k={prev.k} to "
                    f"{cur.median_abs_overhead_ns:g} ns at k={cur.k}"
                )
                logger.warning("Non-monotone overhead in k", circuit=circuit, k=cur.k)
                warnings.append(message)
    return warnings


def _one_coefficient_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """Least squares y = c * x: (c, residual sum of squares, standard error of c)."""
    sxx = float(np.dot(x, x))
    c = float(np.dot(x, y) / sxx)
    residual = y - c * x
    rss = float(np.dot(residual, residual))
    dof = len(x) - 1
    stderr = math.sqrt(rss / dof / sxx) if dof > 0 else 0.0
    return c, rss, stderr


def fit_log_model(points: Sequence[Tuple[float, float]], n1: float, t_1q: float) -> FitResult:
    """Fit T(k) = p * N1 * t_1q * ln(k), and T(k) = q * N1 * t_1q * (k - 1) for comparison.

    Args:
        points: (k, absolute overhead in ns) pairs
        n1: Single-qubit gate count of the routed circuit
        t_1q: Single-qubit gate duration in ns

    Returns:
        FitResult with p, its standard error and the residual sums of squares
    """
    if n1 <= 0 or t_1q <= 0:
        raise DegenerateFitError("Fitting needs a positive single-qubit gate count and duration")
    informative = [(k, t) for k, t in points if k >= 2]
    if len(informative) < MIN_FIT_POINTS:
        raise DegenerateFitError(
            f"Fitting needs at least {MIN_FIT_POINTS} points with k >= 2, got {len(informative)}"
        )

    ks = np.array([k for k, _ in points], dtype=float)
    overhead = np.array([t for _, t in points], dtype=float)
    scale = n1 * t_1q

    p, residual_log, stderr = _one_coefficient_fit(scale * np.log(ks), overhead)
    q, residual_linear, _ = _one_coefficient_fit(scale * (ks - 1), overhead)
    result = FitResult(
        p=p,
        stderr=stderr,
        residual_log=residual_log,
        residual_linear=residual_linear,
        q=q,
        points=len(points),
    )
    logger.debug("Fitted scaling models", p=p, q=q, residual_log=residual_log, residual_linear=residual_linear)
    return result


def fit_reports(reports: Sequence[OverheadReport], t_1q: float, circuit: Optional[str] = None) -> FitResult:
    """Fit the median absolute overhead per k of a benchmark table."""
    selected = [r for r in reports if circuit is None or r.circuit == circuit]
    if not selected:
        raise DegenerateInputError(f"No rows for circuit '{circuit}'")

    by_k: Dict[int, List[float]] = defaultdict(list)
    for r in selected:
        by_k[r.k].append(r.abs_overhead_ns)
    points = [(k, float(np.median(v))) for k, v in sorted(by_k.items())]
    n1 = float(np.median([r.densities.N1 for r in selected]))
    return fit_log_model(points, n1, t_1q)


def linear_trend(xs: Sequence[float], ys: Sequence[float]) -> LinearTrend:
    """Ordinary least-squares line and its coefficient of determination."""
    if len(xs) < 2 or len(set(xs)) < 2:
        raise DegenerateInputError("A trend needs at least two distinct x values")
    fit = stats.linregress(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
    r_squared = float(fit.rvalue ** 2) if np.isfinite(fit.rvalue) else 1.0
    return LinearTrend(slope=float(fit.slope), intercept=float(fit.intercept), r_squared=r_squared)


def flatness(values: Sequence[float]) -> float:
    """Coefficient of variation std/mean (population std)."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0 or arr.mean() == 0:
        raise DegenerateInputError("Flatness needs values with a non-zero mean")
    return float(arr.std() / arr.mean())


def breakdown(reports: Iterable[OverheadReport]) -> List[BreakdownRow]:
    """Median translated duration, routing overhead and serialization overhead per (circuit, k)."""
    buckets: Dict[Tuple[str, int], List[OverheadReport]] = defaultdict(list)
    for r in reports:
        buckets[(r.circuit, r.k)].append(r)
    return [
        BreakdownRow(
            circuit=circuit,
            k=k,
            translated_ns=float(np.median([r.t_translated_ns for r in group])),
            routing_overhead_ns=float(np.median([r.routing_overhead_ns for r in group])),
            serialization_overhead_ns=float(np.median([r.abs_overhead_ns for r in group])),
        )
        for (circuit, k), group in sorted(buckets.items())
    ]


def histogram_bins(
    values: Sequence[float],
    bins: int = 20,
    value_range: Optional[Tuple[float, float]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Counts and bin edges; a degenerate range is widened by 0.5 on each side."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DegenerateInputError("Histogram needs at least one value")
    if value_range is None:
        lo, hi = float(arr.min()), float(arr.max())
        value_range = (lo - 0.5, hi + 0.5) if lo == hi else (lo, hi)
    counts, edges = np.histogram(arr, bins=bins, range=value_range)
    return counts, edges

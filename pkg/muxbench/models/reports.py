"""
Report schemas for compiled circuits, sweeps and model fits
"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

# Column order of the benchmark CSV
CSV_COLUMNS = [
    "circuit", "algo", "n", "k", "strategy", "seed",
    "t_translated_ns", "t_routed_ns", "t_serialized_ns",
    "abs_overhead_ns", "rel_overhead",
    "N1", "N2", "D", "rho1", "rho2",
]


class DensityReport(BaseModel):
    """Gate counts, depth and densities of a circuit."""
    model_config = ConfigDict(frozen=True)

    n: int
    N1: int
    N2: int
    D: int
    rho1: float
    rho2: float

    @property
    def rho_total(self) -> float:
        return self.rho1 + self.rho2


class OverheadReport(BaseModel):
    """Durations of one circuit through the three compilation stages."""
    model_config = ConfigDict(frozen=True)

    circuit: str
    algo: str
    n: int
    k: int
    strategy: str
    seed: int
    t_translated_ns: int
    t_routed_ns: int
    t_serialized_ns: int
    abs_overhead_ns: int
    rel_overhead: float
    densities: DensityReport
    num_gates: int = 0
    order: str = "distance_to_next_2q"
    hide_delays: bool = True

    @property
    def routing_overhead_ns(self) -> int:
        return self.t_routed_ns - self.t_translated_ns

    def csv_row(self) -> Dict[str, object]:
        return {
            "circuit": self.circuit,
            "algo": self.algo,
            "n": self.n,
            "k": self.k,
            "strategy": self.strategy,
            "seed": self.seed,
            "t_translated_ns": self.t_translated_ns,
            "t_routed_ns": self.t_routed_ns,
            "t_serialized_ns": self.t_serialized_ns,
            "abs_overhead_ns": self.abs_overhead_ns,
            "rel_overhead": f"{self.rel_overhead:.6f}",
            "N1": self.densities.N1,
            "N2": self.densities.N2,
            "D": self.densities.D,
            "rho1": f"{self.densities.rho1:.6f}",
            "rho2": f"{self.densities.rho2:.6f}",
        }


class SweepSummary(BaseModel):
    """Median and interquartile range of overheads at one k."""
    circuit: str
    k: int
    strategy: str
    samples: int
    median_abs_overhead_ns: float
    q1_abs_overhead_ns: float
    q3_abs_overhead_ns: float
    median_rel_overhead: float
    q1_rel_overhead: float
    q3_rel_overhead: float
    median_routed_ns: float


class SweepTable(BaseModel):
    """All reports of a k sweep plus per-k summaries sorted by k."""
    rows: List[OverheadReport] = Field(default_factory=list)
    summary: List[SweepSummary] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)


class BreakdownRow(BaseModel):
    """Median duration components of one circuit family at one k."""
    circuit: str
    k: int
    translated_ns: float
    routing_overhead_ns: float
    serialization_overhead_ns: float


class FitResult(BaseModel):
    """Least-squares coefficients of the logarithmic and linear overhead models."""
    model_config = ConfigDict(extra="forbid")

    p: float
    stderr: float
    residual_log: float
    residual_linear: float
    log_base: Literal["e"] = "e"
    q: Optional[float] = Field(default=None, exclude=True)
    points: int = Field(default=0, exclude=True)

    @property
    def log_preferred(self) -> bool:
        return self.residual_log < self.residual_linear


class LinearTrend(BaseModel):
    """Ordinary least-squares line through (x, y) points."""
    slope: float
    intercept: float
    r_squared: float


class OptimizationRow(BaseModel):
    """Median serialized duration under one ordering/delay-hiding combination."""
    order: str
    hide_delays: bool
    k: int
    num_gates: int
    median_duration_ns: float
    q1_duration_ns: float
    q3_duration_ns: float
    samples: int


class RatioRow(BaseModel):
    """Relative overhead at one two-qubit/one-qubit duration ratio."""
    ratio: float
    k: int
    median_rel_overhead: float
    q1_rel_overhead: float
    q3_rel_overhead: float
    median_abs_overhead_ns: float
    samples: int


OPTIMIZATION_COLUMNS = [
    "order", "hide_delays", "k", "num_gates",
    "median_duration_ns", "q1_duration_ns", "q3_duration_ns", "samples",
]
RATIO_COLUMNS = [
    "ratio", "k", "median_rel_overhead", "q1_rel_overhead", "q3_rel_overhead",
    "median_abs_overhead_ns", "samples",
]
SUMMARY_COLUMNS = [
    "circuit", "k", "strategy", "samples",
    "median_abs_overhead_ns", "q1_abs_overhead_ns", "q3_abs_overhead_ns",
    "median_rel_overhead", "q1_rel_overhead", "q3_rel_overhead", "median_routed_ns",
]
BREAKDOWN_COLUMNS = ["circuit", "k", "translated_ns", "routing_overhead_ns", "serialization_overhead_ns"]
TOY_COLUMNS = ["k", "mean_factor", "std_factor"]
QUEUE_COLUMNS = ["k", "mc_mean", "analytic"]

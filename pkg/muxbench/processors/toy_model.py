"""
Layered toy model of single-qubit serialization.

Every layer, each qubit receives a 1q gate with probability p1 and each grid edge a
2q gate with probability p2. A layer lasts t2 if it holds a 2q gate, otherwise 1 if
it holds any 1q gate. With k qubits per switch, the 1q gates of one switch run one
after another, so a layer lasts as long as its busiest switch (never less than t2
when a 2q gate is present).
"""
from typing import Tuple

import numpy as np
import structlog

from muxbench.models.scaling import ToyModelConfig, ToyModelResult
from muxbench.processors.switch_grouping import trivial_grouping

logger = structlog.get_logger()


def switch_membership(n: int, k: int) -> np.ndarray:
    """(n, m) 0/1 matrix of the trivial grouping."""
    grouping = trivial_grouping(n, k)
    membership = np.zeros((n, grouping.m), dtype=np.int64)
    membership[np.arange(n), grouping.group_of] = 1
    return membership


def layer_times(
    one_q: np.ndarray,
    two_q: np.ndarray,
    membership: np.ndarray,
    t2: float,
    no2q_branch: str = "per_switch",
) -> Tuple[np.ndarray, np.ndarray]:
    """Ideal and serialized duration of every layer.

    Args:
        one_q: (depth, n) boolean 1q gate placements
        two_q: (depth, edges) boolean 2q gate placements
        membership: (n, m) switch membership
        t2: Two-qubit gate duration in units of the 1q gate time
        no2q_branch: "per_switch" or "total" timing of layers without 2q gates

    Returns:
        (ideal, serialized) arrays of length depth
    """
    has_2q = two_q.any(axis=1)
    has_1q = one_q.any(axis=1)
    busiest = (one_q.astype(np.int64) @ membership).max(axis=1, initial=0)

    ideal = np.where(has_2q, t2, np.where(has_1q, 1.0, 0.0))
    without_2q = busiest if no2q_branch == "per_switch" else one_q.sum(axis=1)
    serialized = np.where(has_2q, np.maximum(t2, busiest), without_2q)
    return ideal, serialized.astype(float)


def toy_model_trial(cfg: ToyModelConfig, trial: int, membership: np.ndarray) -> float:
    rng = np.random.default_rng([cfg.seed, trial])
    n, edges = cfg.grid.n, len(cfg.grid.edges)
    one_q = rng.random((cfg.depth, n)) < cfg.p1
    two_q = rng.random((cfg.depth, edges)) < cfg.p2
    ideal, serialized = layer_times(one_q, two_q, membership, cfg.t2, cfg.no2q_branch)
    total = ideal.sum()
    if total == 0:
        return 1.0
    return float(serialized.sum() / total)


def toy_model_run(cfg: ToyModelConfig, trials: int) -> ToyModelResult:
    """Mean and standard deviation of the overhead factor over independent trials.

    Trial ``i`` draws from the stream seeded by ``(cfg.seed, i)``, so results do
    not depend on how trials are split across workers.
    """
    membership = switch_membership(cfg.grid.n, cfg.k)
    factors = np.array([toy_model_trial(cfg, t, membership) for t in range(trials)])
    result = ToyModelResult(
        k=cfg.k,
        mean_factor=float(factors.mean()),
        std_factor=float(factors.std(ddof=1)) if trials > 1 else 0.0,
        trials=trials,
    )
    logger.debug("Toy model run", k=cfg.k, p1=cfg.p1, p2=cfg.p2, t2=cfg.t2, mean=result.mean_factor)
    return result

"""
Maximum waiting time of k clients with exponential waiting-time tails.
"""
import numpy as np
import structlog
from scipy.special import digamma

from muxbench.models.scaling import QueueEstimate, QueueModel
from muxbench.utils.error_handlers import ValidationError

logger = structlog.get_logger()

# bounds the (chunk, k) sample matrix
CHUNK_TRIALS = 10_000


def expected_max_exponential(eta: float, k: int) -> float:
    """E[max of k iid Exp(eta)] = H_k / eta."""
    if eta <= 0:
        raise ValidationError("Decay rate eta must be positive", field="eta")
    if k < 1:
        raise ValidationError("Number of clients k must be at least 1", field="k")
    harmonic = digamma(k + 1) + np.euler_gamma
    return float(harmonic / eta)


def sample_max_waiting(model: QueueModel) -> np.ndarray:
    """One maximum per trial, drawn chunk by chunk from a single seeded stream."""
    rng = np.random.default_rng(model.seed)
    maxima = np.empty(model.trials)
    for start in range(0, model.trials, CHUNK_TRIALS):
        size = min(CHUNK_TRIALS, model.trials - start)
        waits = rng.standard_exponential((size, model.k)) / model.eta
        maxima[start:start + size] = waits.max(axis=1)
    return maxima


def queue_max_waiting_mc(model: QueueModel) -> QueueEstimate:
    """Monte Carlo mean of the maximum waiting time, with its standard error."""
    maxima = sample_max_waiting(model)
    stderr = float(maxima.std(ddof=1) / np.sqrt(model.trials)) if model.trials > 1 else 0.0
    estimate = QueueEstimate(
        k=model.k,
        eta=model.eta,
        mc_mean=float(maxima.mean()),
        stderr=stderr,
        analytic=expected_max_exponential(model.eta, model.k),
        trials=model.trials,
    )
    logger.debug("Queue Monte Carlo", k=model.k, eta=model.eta, mean=estimate.mc_mean, analytic=estimate.analytic)
    return estimate

"""
k sweeps of the toy serialization model and the queueing Monte Carlo.
"""
from typing import Sequence

import structlog

from muxbench.models.scaling import QueueModel, QueueSweep, ToyModelConfig, ToySweep
from muxbench.processors.queueing import queue_max_waiting_mc
from muxbench.processors.toy_model import toy_model_run
from muxbench.services.analysis import fit_log_model
from muxbench.utils.error_handlers import DegenerateFitError, ValidationError
from muxbench.utils.parallel import parallel_map

logger = structlog.get_logger()


def _toy_point(args):
    cfg, trials = args
    return toy_model_run(cfg, trials)


def toy_model_sweep(cfg: ToyModelConfig, ks: Sequence[int], trials: int, jobs: int = 1) -> ToySweep:
    """Overhead factor for every k, plus log and linear fits of ``factor - 1``.

    The fit uses unit gate count and duration, so ``p`` is the coefficient of ln(k)
    in units of the single-qubit gate time per layer.
    """
    if not ks:
        raise ValidationError("At least one k is required", field="ks")
    if trials < 1:
        raise ValidationError("At least one trial is required", field="trials")

    work = [(cfg.model_copy(update={"k": k}), trials) for k in sorted(set(ks))]
    rows = parallel_map(_toy_point, work, jobs)

    try:
        fit = fit_log_model([(r.k, r.mean_factor - 1.0) for r in rows], n1=1.0, t_1q=1.0)
    except DegenerateFitError:
        fit = None
    logger.info("Toy model sweep complete", ks=len(rows), trials=trials, p1=cfg.p1, p2=cfg.p2)
    return ToySweep(rows=rows, fit=fit)


def queue_sweep(ks: Sequence[int], eta: float, trials: int, seed: int, jobs: int = 1) -> QueueSweep:
    """Monte Carlo and exact expected maximum waiting time for every k."""
    if not ks:
        raise ValidationError("At least one k is required", field="ks")
    models = [QueueModel(eta=eta, k=k, trials=trials, seed=seed) for k in sorted(set(ks))]
    rows = parallel_map(queue_max_waiting_mc, models, jobs)
    for row in rows:
        if abs(row.z_score) > 3:
            logger.warning("Monte Carlo mean off the exact value", k=row.k, z=row.z_score, trials=row.trials)
    logger.info("Queue sweep complete", ks=len(rows), eta=eta, trials=trials)
    return QueueSweep(rows=rows)

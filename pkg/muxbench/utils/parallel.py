"""
Process-parallel map with results in input order.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import structlog

logger = structlog.get_logger()

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> List[R]:
    """Apply ``fn`` to every item, in worker processes when ``jobs > 1``.

    ``fn`` must be a module-level callable so it can be pickled. Results keep
    the order of ``items`` regardless of completion order.
    """
    work = list(items)
    if jobs <= 1 or len(work) <= 1:
        return [fn(item) for item in work]

    workers = min(jobs, len(work))
    logger.debug("Starting worker pool", workers=workers, tasks=len(work))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, work))

"""
Trial Runner - bounded worker pool with ordered result assembly

Trials are independent and carry their own seeds, so the loky process
backend is safe. Results come back in submission order, which keys them by
cell/trial rather than completion order.
"""
import logging
from typing import Any, Callable, Iterable, Optional

from joblib import Parallel, delayed

logger = logging.getLogger(__name__)


def resolve_jobs(jobs: Optional[int]) -> int:
    """None means every available core (joblib's -1)"""
    return -1 if jobs is None else jobs


def run_trials(fn: Callable[..., Any], tasks: Iterable[dict], jobs: Optional[int] = None) -> list[Any]:
    """
    Run fn(**task) for every task

    Args:
        fn: module-level function (picklable)
        tasks: keyword arguments per trial
        jobs: worker count; 1 runs in-process

    Returns:
        Results in task order
    """
    tasks = list(tasks)
    n_jobs = resolve_jobs(jobs)
    if n_jobs == 1 or len(tasks) <= 1:
        return [fn(**task) for task in tasks]
    return Parallel(n_jobs=n_jobs)(delayed(fn)(**task) for task in tasks)

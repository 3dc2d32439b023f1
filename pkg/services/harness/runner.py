"""Parallel replicate runner.

Replicate ``i`` always receives ``replicate_rng(master_seed, i)``, so
results do not depend on worker count or scheduling order.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Callable
from typing import TypeVar

import numpy as np
from joblib import Parallel, delayed

from engine.errors import ConfigurationError
from services.harness.simulate import replicate_rng

LOG = logging.getLogger("factorial.harness")

T = TypeVar("T")

THREADS_ENV = "FI_THREADS"


def thread_count() -> int:
    """Worker cap from ``FI_THREADS``; 1 when unset."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be >= 1, got {value}")
    return value


def run_replicates(
    fn: Callable[[int, np.random.Generator], T],
    replicates: int,
    master_seed: int,
    n_jobs: int | None = None,
) -> list[T]:
    """``[fn(i, rng_i) for i in range(replicates)]``, possibly in parallel, in index order."""
    jobs = thread_count() if n_jobs is None else n_jobs
    LOG.debug("run_replicates R=%d seed=%d n_jobs=%d", replicates, master_seed, jobs)
    if jobs == 1:
        return [fn(i, replicate_rng(master_seed, i)) for i in range(replicates)]
    out: list[T] = Parallel(n_jobs=jobs)(
        delayed(fn)(i, replicate_rng(master_seed, i)) for i in range(replicates)
    )
    return out


__all__ = ["THREADS_ENV", "run_replicates", "thread_count"]

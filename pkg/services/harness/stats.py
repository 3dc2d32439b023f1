"""Monte Carlo summary statistics."""

from __future__ import annotations

import math

import numpy as np


def batch_means_se(x: np.ndarray, batches: int = 20) -> float:
    """Standard error of the mean by batch means; falls back to the i.i.d. formula
    when there are fewer draws than batches."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.size < 2:
        return math.nan
    if arr.size < 2 * batches:
        return float(arr.std(ddof=1) / math.sqrt(arr.size))
    means = np.array([chunk.mean() for chunk in np.array_split(arr, batches)])
    return float(means.std(ddof=1) / math.sqrt(batches))


def proportion_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / n)


def loglog_slope(x: np.ndarray, y: np.ndarray) -> float:
    slope, _ = np.polyfit(np.log(np.asarray(x, dtype=np.float64)), np.log(np.asarray(y, dtype=np.float64)), 1)
    return float(slope)


__all__ = ["batch_means_se", "loglog_slope", "proportion_se"]

"""Per-cell outcome statistics."""

from __future__ import annotations

import logging

import numpy as np

from contracts.data import CellSummary, FactorialDataset
from engine.design.combos import n_cells
from engine.design.policy import assignment_probabilities

LOG = logging.getLogger("factorial.estimators")


def summarize_cells(data: FactorialDataset) -> CellSummary:
    """Counts, sums, adaptive means ``c_hat`` and weighting means ``c_tilde``.

    Empty cells get ``c_hat = 0`` and ``empty = True``.
    """
    m = n_cells(data.K)
    idx = data.cell_index
    n_t = np.bincount(idx, minlength=m)
    sum_y = np.bincount(idx, weights=data.y, minlength=m)
    sumsq_y = np.bincount(idx, weights=data.y**2, minlength=m)
    empty = n_t == 0
    c_hat = np.divide(sum_y, n_t, out=np.zeros(m), where=~empty)
    c_tilde = sum_y / (data.n * assignment_probabilities(data.dist))
    if empty.any():
        LOG.debug("summarize_cells: %d of %d cells empty (n=%d)", int(empty.sum()), m, data.n)
    return CellSummary(
        K=data.K,
        n=data.n,
        n_t=n_t,
        sum_y=sum_y,
        sumsq_y=sumsq_y,
        c_hat=c_hat,
        c_tilde=c_tilde,
        empty=empty,
    )


def within_cell_variance(summary: CellSummary) -> np.ndarray:
    """Sample variance (ddof=1) per cell; 0 where fewer than two rows."""
    n_t = summary.n_t.astype(np.float64)
    ok = summary.n_t >= 2
    centred = summary.sumsq_y - np.divide(summary.sum_y**2, n_t, out=np.zeros_like(n_t), where=ok)
    var = np.divide(centred, n_t - 1.0, out=np.zeros_like(n_t), where=ok)
    return np.maximum(var, 0.0)


__all__ = ["summarize_cells", "within_cell_variance"]

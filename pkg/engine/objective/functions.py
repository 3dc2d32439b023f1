"""Objective values ``Q(theta)`` for every estimator.

These are the direct, value-only forms. ``engine.objective.gradient`` holds
the matching value-and-gradient closures used by the optimizer.
"""

from __future__ import annotations

import numpy as np

from contracts.data import CellSummary, FactorialDataset
from contracts.design import PotentialOutcomeTable
from engine.design.policy import ThetaLike, cell_probabilities, entropy, theta_array
from engine.errors import DimensionMismatchError
from engine.estimators.variance import Variant, var_hat_corrected
from engine.estimators.weights import hajek_weights


def _penalty(theta: ThetaLike, lam: float) -> float:
    return lam * entropy(theta) if lam else 0.0


def _check_k(theta: ThetaLike, K: int) -> np.ndarray:
    arr = theta_array(theta)
    if arr.size != K:
        raise DimensionMismatchError(f"theta has K={arr.size}, inputs have K={K}")
    return arr


def q_true(table: PotentialOutcomeTable, theta: ThetaLike, lam: float = 0.0) -> float:
    arr = _check_k(theta, table.K)
    return float(cell_probabilities(arr) @ table.c) + _penalty(arr, lam)


def q_adaptive(summary: CellSummary, theta: ThetaLike, lam: float = 0.0) -> float:
    """Plug-in objective over cell means; empty cells contribute 0."""
    arr = _check_k(theta, summary.K)
    return float(cell_probabilities(arr) @ summary.c_hat) + _penalty(arr, lam)


def q_ipw(data: FactorialDataset, theta: ThetaLike, lam: float = 0.0) -> float:
    arr = _check_k(theta, data.K)
    return float(np.mean(data.y * hajek_weights(data, arr))) + _penalty(arr, lam)


def q_ipw_cells(summary: CellSummary, theta: ThetaLike, lam: float = 0.0) -> float:
    """Cell form of the weighting estimator, ``sum_t c_tilde_t P_theta(t)``."""
    arr = _check_k(theta, summary.K)
    return float(cell_probabilities(arr) @ summary.c_tilde) + _penalty(arr, lam)


def q_hajek(data: FactorialDataset, theta: ThetaLike, lam: float = 0.0) -> float:
    """Self-normalised weighting estimator ``sum Y_i W_i / sum W_i``."""
    arr = _check_k(theta, data.K)
    w = hajek_weights(data, arr)
    return float((data.y @ w) / w.sum()) + _penalty(arr, lam)


def q_mean_variance(
    data: FactorialDataset,
    sigma2: np.ndarray | None,
    theta: ThetaLike,
    lam: float,
    variant: Variant = "plugin",
) -> float:
    """``E_theta[c_tilde] - lam * (Var_hat - Delta)``; no entropy term."""
    arr = _check_k(theta, data.K)
    mean = float(np.mean(data.y * hajek_weights(data, arr)))
    if not lam:
        return mean
    return mean - lam * var_hat_corrected(data, arr, variant, sigma2)


__all__ = [
    "q_adaptive",
    "q_hajek",
    "q_ipw",
    "q_ipw_cells",
    "q_mean_variance",
    "q_true",
]

"""Importance weights ``W_i = P_theta(T_i) / P(T_i)`` for the weighting estimators."""

from __future__ import annotations

import numpy as np

from contracts.data import FactorialDataset
from engine.design.policy import ThetaLike, theta_array
from engine.errors import DegenerateWeightsError, PositivityError


def score_matrix(data: FactorialDataset, theta: ThetaLike) -> np.ndarray:
    """``(n, K)`` matrix of ``(t_ik - theta_k) / (theta_k (1 - theta_k))``.

    Row ``i`` times ``W_i`` is the gradient of ``W_i`` in ``theta``.
    """
    arr = theta_array(theta, data.K)
    return (data.treatments - arr) / (arr * (1.0 - arr))


def hajek_weights(data: FactorialDataset, theta: ThetaLike) -> np.ndarray:
    """Per-row importance weights, computed factor by factor in log space."""
    arr = theta_array(theta, data.K)
    pi = data.dist.marginals()
    if not np.all((pi > 0.0) & (pi < 1.0)):
        raise PositivityError("every assignment marginal must lie in (0, 1)")
    on = np.log(arr) - np.log(pi)
    off = np.log1p(-arr) - np.log1p(-pi)
    bits = data.treatments.astype(np.float64)
    w = np.exp(bits @ on + (1.0 - bits) @ off)
    if not np.all(np.isfinite(w)) or w.sum() <= 0.0:
        raise DegenerateWeightsError("importance weights are not finite and positive")
    return w


def ipw_mean(data: FactorialDataset, theta: ThetaLike) -> float:
    """Row form of the weighting estimator, ``(1/n) sum_i Y_i W_i``."""
    return float(np.mean(data.y * hajek_weights(data, theta)))


__all__ = ["hajek_weights", "ipw_mean", "score_matrix"]

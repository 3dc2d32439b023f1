"""Analytic value-and-gradient evaluators.

Every gradient comes from the score identity
``d P_theta(t) / d theta_k = P_theta(t) (t_k - theta_k) / (theta_k (1 - theta_k))``,
applied per cell (``score_sum``) or per row through ``W_i``.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from contracts.data import FactorialDataset
from engine.design.policy import (
    ThetaLike,
    cell_probabilities,
    entropy,
    entropy_gradient,
    linear_value_and_grad,
    score_sum,
    theta_array,
)
from engine.estimators.variance import Variant, VarianceInputs, pairwise_square
from engine.estimators.weights import hajek_weights, score_matrix

ValueAndGrad = tuple[float, np.ndarray]


def _add_entropy(value: float, grad: np.ndarray, theta: np.ndarray, lam: float) -> ValueAndGrad:
    if not lam:
        return value, grad
    return value + lam * entropy(theta), grad + lam * entropy_gradient(theta)


def cells_value_and_grad(values: np.ndarray, theta: ThetaLike, lam: float) -> ValueAndGrad:
    return linear_value_and_grad(values, theta, lam)


def ipw_value_and_grad(data: FactorialDataset, theta: ThetaLike, lam: float) -> ValueAndGrad:
    arr = theta_array(theta, data.K)
    yw = data.y * hajek_weights(data, arr)
    value = float(yw.mean())
    grad = yw @ score_matrix(data, arr) / data.n
    return _add_entropy(value, grad, arr, lam)


def hajek_value_and_grad(data: FactorialDataset, theta: ThetaLike, lam: float) -> ValueAndGrad:
    arr = theta_array(theta, data.K)
    w = hajek_weights(data, arr)
    total = w.sum()
    value = float(data.y @ w / total)
    grad = ((data.y - value) * w) @ score_matrix(data, arr) / total
    return _add_entropy(value, grad, arr, lam)


def mean_variance_value_and_grad(
    data: FactorialDataset,
    inputs: VarianceInputs,
    theta: ThetaLike,
    lam: float,
    variant: Variant,
) -> ValueAndGrad:
    """``M - lam (V - Delta)`` and its gradient for the chosen variance estimator."""
    arr = theta_array(theta, data.K)
    p_theta = cell_probabilities(arr)
    ct = inputs.c_tilde
    n = inputs.n
    mean = float(p_theta @ ct)
    d_mean = score_sum(ct * p_theta, arr)
    if not lam:
        return mean, d_mean

    s_over = inputs.sigma2 / (n * inputs.p_assign)
    if variant == "plugin":
        second = float(p_theta @ ct**2)
        var_hat = second - mean * mean
        d_var = score_sum(ct**2 * p_theta, arr) - 2.0 * mean * d_mean
        p2 = p_theta**2
        delta = float(p_theta @ s_over) - float(p2 @ s_over)
        d_delta = score_sum(s_over * p_theta, arr) - score_sum(2.0 * p2 * s_over, arr)
    else:
        w = hajek_weights(data, arr)
        g_rows = score_matrix(data, arr)
        yw = inputs.y * w
        s = yw.sum()
        cross = pairwise_square(yw)
        d_cross = (2.0 * s * (yw @ g_rows) - 2.0 * ((yw * yw) @ g_rows)) / (n * (n - 1))
        if variant == "u1":
            var_hat = float(p_theta @ ct**2) - cross
            d_var = score_sum(ct**2 * p_theta, arr) - d_cross
            delta = float(p_theta @ s_over)
            d_delta = score_sum(s_over * p_theta, arr)
        else:
            y2w = inputs.y**2 * w
            var_hat = float(y2w.mean()) - cross
            d_var = (y2w @ g_rows) / n - d_cross
            delta = float(p_theta @ inputs.sigma2)
            d_delta = score_sum(inputs.sigma2 * p_theta, arr)
    value = mean - lam * (var_hat - delta)
    grad = d_mean - lam * (d_var - d_delta)
    return value, grad


def finite_difference_gradient(
    f: Callable[[np.ndarray], float], theta: ThetaLike, h: float = 1e-5
) -> np.ndarray:
    """Central differences; ``theta`` must sit at least ``h`` inside (0, 1)."""
    arr = theta_array(theta)
    grad = np.empty_like(arr)
    for k in range(arr.size):
        up = arr.copy()
        down = arr.copy()
        up[k] += h
        down[k] -= h
        grad[k] = (f(up) - f(down)) / (2.0 * h)
    return grad


__all__ = [
    "ValueAndGrad",
    "cells_value_and_grad",
    "finite_difference_gradient",
    "hajek_value_and_grad",
    "ipw_value_and_grad",
    "mean_variance_value_and_grad",
]

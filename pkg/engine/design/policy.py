"""Product-Bernoulli intervention model, assignment probabilities and entropy.

Functions accept either a validated ``ThetaVector`` or a raw float array; raw
arrays are the fast path used inside the optimizer loop.
"""

from __future__ import annotations

import numpy as np
from scipy.special import entr

from contracts.design import AssignmentDist, ThetaVector, TreatmentCombo
from engine.design.combos import n_cells
from engine.errors import BoundaryError, DimensionMismatchError, PositivityError

ThetaLike = ThetaVector | np.ndarray


def theta_array(theta: ThetaLike, K: int | None = None) -> np.ndarray:
    """Float array view of ``theta``; coordinates must be strictly inside (0, 1)."""
    arr = theta.as_array() if isinstance(theta, ThetaVector) else np.asarray(theta, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionMismatchError("theta must be a non-empty vector")
    if K is not None and arr.size != K:
        raise DimensionMismatchError(f"theta has K={arr.size}, expected K={K}")
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise BoundaryError(f"theta must lie strictly inside (0, 1), got {arr.tolist()}")
    return arr


def cell_probabilities(theta: ThetaLike) -> np.ndarray:
    """``P_theta(T = t)`` for every cell, indexed by cell index."""
    arr = theta_array(theta)
    n_cells(arr.size)
    p = np.ones(1)
    for q in arr:
        p = np.concatenate((p * (1.0 - q), p * q))
    return p


def prob_of_combo(theta: ThetaLike, t: TreatmentCombo) -> float:
    arr = theta_array(theta)
    if arr.size != t.K:
        raise DimensionMismatchError(f"theta has K={arr.size}, combination has K={t.K}")
    bits = np.asarray(t.bits, dtype=np.float64)
    return float(np.prod(np.where(bits == 1, arr, 1.0 - arr)))


def entropy(theta: ThetaLike) -> float:
    """Sum of per-coin Bernoulli entropies in nats."""
    arr = theta_array(theta)
    return float((entr(arr) + entr(1.0 - arr)).sum())


def entropy_gradient(theta: ThetaLike) -> np.ndarray:
    arr = theta_array(theta)
    return np.log1p(-arr) - np.log(arr)


def assignment_probabilities(dist: AssignmentDist) -> np.ndarray:
    if dist.kind == "uniform":
        m = n_cells(dist.K)
        return np.full(m, 1.0 / m)
    return cell_probabilities(dist.marginals())


def assignment_prob(dist: AssignmentDist, t: TreatmentCombo) -> float:
    if dist.K != t.K:
        raise DimensionMismatchError(f"assignment has K={dist.K}, combination has K={t.K}")
    if dist.kind == "uniform":
        return 2.0**-dist.K
    pi = dist.marginals()
    if not np.all((pi > 0) & (pi < 1)):
        raise PositivityError("assignment marginals must lie in (0, 1)")
    bits = np.asarray(t.bits)
    return float(np.prod(np.where(bits == 1, pi, 1.0 - pi)))


def score_sum(w: np.ndarray, theta: ThetaLike) -> np.ndarray:
    """``sum_t w_t (t_k - theta_k) / (theta_k (1 - theta_k))`` for every factor ``k``.

    With ``w = v * P_theta`` this is the gradient of ``sum_t v_t P_theta(t)``.
    """
    arr = theta_array(theta)
    K = arr.size
    total = w.sum()
    ones = np.empty(K)
    for k in range(K):
        ones[k] = w.reshape(1 << (K - 1 - k), 2, 1 << k)[:, 1, :].sum()
    return (ones - arr * total) / (arr * (1.0 - arr))


def linear_value_and_grad(values: np.ndarray, theta: ThetaLike, lam: float = 0.0) -> tuple[float, np.ndarray]:
    """Value and gradient of ``sum_t v_t P_theta(t) + lam * entropy(theta)``."""
    arr = theta_array(theta)
    w = values * cell_probabilities(arr)
    value = float(w.sum())
    grad = score_sum(w, arr)
    if lam:
        value += lam * entropy(arr)
        grad = grad + lam * entropy_gradient(arr)
    return value, grad


__all__ = [
    "ThetaLike",
    "assignment_prob",
    "assignment_probabilities",
    "cell_probabilities",
    "entropy",
    "entropy_gradient",
    "linear_value_and_grad",
    "prob_of_combo",
    "score_sum",
    "theta_array",
]

"""Variance functionals of the cell values under ``P_theta`` and their
bias-corrected sample estimators.

Three estimators of ``Var_theta[c_t]`` are offered:

* ``plugin``: ``Var_theta[c_tilde] - Delta`` with
  ``Delta = E_theta[s_t / (n P(t))] - sum_t P_theta(t)^2 s_t / (n P(t))``.
* ``u1``: ``E_theta[c_tilde^2] - X - E_theta[s_t / (n P(t))]``.
* ``u2``: ``(1/n) sum_i Y_i^2 W_i - X - E_theta[s_t]``.

``X = (S^2 - T) / (n (n - 1))`` is the pairwise U-statistic for
``E_theta[c_t]^2`` with ``S = sum_i Y_i W_i`` and ``T = sum_i (Y_i W_i)^2``;
``s_t`` is the outcome variance of cell ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from contracts.data import FactorialDataset
from contracts.design import PotentialOutcomeTable
from engine.design.policy import ThetaLike, assignment_probabilities, cell_probabilities, theta_array
from engine.errors import DimensionMismatchError, InsufficientSampleError
from engine.estimators.cells import summarize_cells, within_cell_variance
from engine.estimators.weights import hajek_weights

Variant = Literal["plugin", "u1", "u2"]


def var_theta_of_c(values: np.ndarray, theta: ThetaLike) -> float:
    """``E_theta[v_t^2] - E_theta[v_t]^2`` over all cells (clipped at 0)."""
    p = cell_probabilities(theta)
    v = np.asarray(values, dtype=np.float64)
    if v.shape != p.shape:
        raise DimensionMismatchError(f"{v.size} cell values for {p.size} cells")
    mean = float(p @ v)
    return max(float(p @ v**2) - mean * mean, 0.0)


def cell_sigma2(data: FactorialDataset, table: PotentialOutcomeTable | None = None) -> np.ndarray:
    """Per-cell outcome variance: from ``table`` when known, else within-cell sample variance."""
    if table is not None:
        if table.K != data.K:
            raise DimensionMismatchError(f"table has K={table.K}, dataset has K={data.K}")
        return np.asarray(table.sigma, dtype=np.float64) ** 2
    return within_cell_variance(summarize_cells(data))


@dataclass(frozen=True)
class VarianceInputs:
    """θ-independent pieces shared by every variance evaluation on one dataset."""

    y: np.ndarray
    c_tilde: np.ndarray
    p_assign: np.ndarray
    sigma2: np.ndarray
    n: int

    @classmethod
    def from_data(
        cls, data: FactorialDataset, sigma2: np.ndarray | None = None
    ) -> VarianceInputs:
        summary = summarize_cells(data)
        s2 = within_cell_variance(summary) if sigma2 is None else np.asarray(sigma2, dtype=np.float64)
        if s2.shape != summary.c_tilde.shape:
            raise DimensionMismatchError("sigma2 must have one entry per cell")
        return cls(
            y=data.y,
            c_tilde=summary.c_tilde,
            p_assign=assignment_probabilities(data.dist),
            sigma2=s2,
            n=data.n,
        )


def pairwise_square(yw: np.ndarray) -> float:
    """``(1/(n(n-1))) sum_{i != j} a_i a_j`` via ``(S^2 - T) / (n(n-1))``."""
    n = yw.size
    s = yw.sum()
    return float((s * s - (yw * yw).sum()) / (n * (n - 1)))


def variance_terms(
    inputs: VarianceInputs, w: np.ndarray, theta: ThetaLike, variant: Variant
) -> tuple[float, float]:
    """``(Var_hat, Delta)`` for ``variant`` given the row weights ``w``."""
    p_theta = cell_probabilities(theta)
    n = inputs.n
    if variant != "plugin" and n < 2:
        raise InsufficientSampleError(f"variant {variant!r} needs n >= 2, got n={n}")
    ct = inputs.c_tilde
    s_over = inputs.sigma2 / (n * inputs.p_assign)
    if variant == "plugin":
        mean = float(p_theta @ ct)
        var_hat = float(p_theta @ ct**2) - mean * mean
        delta = float(p_theta @ s_over) - float(p_theta**2 @ s_over)
    elif variant == "u1":
        var_hat = float(p_theta @ ct**2) - pairwise_square(inputs.y * w)
        delta = float(p_theta @ s_over)
    else:
        var_hat = float(np.mean(inputs.y**2 * w)) - pairwise_square(inputs.y * w)
        delta = float(p_theta @ inputs.sigma2)
    return var_hat, delta


def var_hat_corrected(
    data: FactorialDataset,
    theta: ThetaLike,
    variant: Variant = "plugin",
    sigma2: np.ndarray | None = None,
) -> float:
    """Bias-corrected estimate of ``Var_theta[c_t]`` from one dataset.

    ``sigma2`` defaults to the within-cell sample variance.
    """
    theta_array(theta, data.K)
    if variant != "plugin" and data.n < 2:
        raise InsufficientSampleError(f"variant {variant!r} needs n >= 2, got n={data.n}")
    inputs = VarianceInputs.from_data(data, sigma2)
    w = hajek_weights(data, theta)
    var_hat, delta = variance_terms(inputs, w, theta, variant)
    return var_hat - delta


__all__ = [
    "Variant",
    "VarianceInputs",
    "cell_sigma2",
    "pairwise_square",
    "var_hat_corrected",
    "var_theta_of_c",
    "variance_terms",
]

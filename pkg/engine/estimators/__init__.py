"""Cell summaries, importance weights and variance estimators."""

from __future__ import annotations

from engine.estimators.cells import summarize_cells, within_cell_variance
from engine.estimators.variance import (
    VarianceInputs,
    cell_sigma2,
    pairwise_square,
    var_hat_corrected,
    var_theta_of_c,
    variance_terms,
)
from engine.estimators.weights import hajek_weights, ipw_mean, score_matrix

__all__ = [
    "VarianceInputs",
    "cell_sigma2",
    "hajek_weights",
    "ipw_mean",
    "pairwise_square",
    "score_matrix",
    "summarize_cells",
    "var_hat_corrected",
    "var_theta_of_c",
    "variance_terms",
    "within_cell_variance",
]

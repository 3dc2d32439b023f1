"""Top-cluster policy: the product-Bernoulli fit to the cells of the best component."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from config.schema import EMConfig
from contracts.data import CellSummary, FactorialDataset
from contracts.design import EPS_BOX, ThetaVector, TreatmentCombo
from contracts.results import MixtureFit
from engine.design.combos import combo_bits
from engine.errors import ConfigurationError, DimensionMismatchError, NumericalError
from engine.mixture.em import fit_mixture

LOG = logging.getLogger("factorial.mixture")


def cell_mean_values(summary: CellSummary) -> tuple[np.ndarray, np.ndarray]:
    """``(c_hat, bits)`` over the non-empty cells, aligned row by row."""
    keep = ~summary.empty
    if not keep.any():
        raise ConfigurationError("every cell is empty; nothing to cluster")
    return summary.c_hat[keep], combo_bits(summary.K)[keep]


def fit_outcome_mixture(
    data: FactorialDataset,
    k: int,
    config: EMConfig | None = None,
    *,
    seed: int | None = None,
) -> tuple[MixtureFit, np.ndarray, np.ndarray]:
    """Bernoulli mixture over the raw binary outcomes, folded back onto cells.

    Returns ``(fit, labels, bits)`` over the non-empty cells: a cell's label is
    the component holding the largest share of its units' responsibilities
    (ties to the lower index).
    """
    if not np.isin(data.y, (0.0, 1.0)).all():
        raise ConfigurationError("a bernoulli mixture over outcomes needs binary y")
    fit = fit_mixture(data.y, k, "bernoulli", config, seed=seed)
    cells = data.cell_index
    m = 1 << data.K
    mass = np.column_stack(
        [np.bincount(cells, weights=fit.responsibilities[:, j], minlength=m) for j in range(fit.k)]
    )
    keep = np.bincount(cells, minlength=m) > 0
    labels = np.argmax(mass[keep], axis=1)
    LOG.debug("outcome mixture: %d units over %d cells", data.n, int(keep.sum()))
    return fit, labels, combo_bits(data.K)[keep]


def top_cluster_policy(
    fit: MixtureFit,
    combos: np.ndarray | Sequence[TreatmentCombo],
    eps: float = EPS_BOX,
    *,
    labels: np.ndarray | None = None,
) -> tuple[int, ThetaVector]:
    """Index of the component with the largest mean, and the bit means of its members.

    ``labels`` overrides ``fit.labels`` when the fit was over units rather than cells.
    """
    hard = fit.labels if labels is None else np.asarray(labels)
    if isinstance(combos, np.ndarray):
        bits = np.asarray(combos, dtype=np.float64)
    else:
        bits = np.asarray([c.bits for c in combos], dtype=np.float64)
    if bits.ndim != 2 or bits.shape[0] != hard.shape[0]:
        raise DimensionMismatchError(
            f"{bits.shape[0] if bits.ndim else 0} combinations for {hard.shape[0]} labels"
        )
    j_hat = int(np.argmax(np.asarray(fit.d)))
    members = hard == j_hat
    if not members.any():
        raise NumericalError(f"winning component {j_hat} has no hard-assigned cells")
    theta = ThetaVector.clamped(bits[members].mean(axis=0), eps=eps)
    LOG.debug("top cluster %d: %d cells, d=%.6g", j_hat, int(members.sum()), fit.d[j_hat])
    return j_hat, theta


__all__ = ["cell_mean_values", "fit_outcome_mixture", "top_cluster_policy"]

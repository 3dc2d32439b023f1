"""Sample-splitting estimate of the optimal value ``Q(theta*)``.

Fold 1 picks the policy; fold 2, never seen by the fit, scores it.
"""

from __future__ import annotations

import logging

import numpy as np

from config.schema import OptimizerConfig
from contracts.data import FactorialDataset
from contracts.design import PotentialOutcomeTable
from contracts.objective import EstimatorName, ObjectiveSpec
from contracts.results import OptimResult, SplitResult
from engine.errors import EmptyFoldError
from engine.objective.factory import ObjectiveInputs, make_objective
from engine.optimizer.ascent import maximize

LOG = logging.getLogger("factorial.inference")


def split_indices(n: int, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Random disjoint ``(fold1, fold2)`` row indices with ``round(fraction * n)`` rows in fold 1."""
    if not 0.0 < fraction < 1.0:
        raise EmptyFoldError(f"split fraction must be in (0, 1), got {fraction}")
    n1 = round(fraction * n)
    if n1 < 1 or n1 > n - 1:
        raise EmptyFoldError(f"split fraction {fraction} of n={n} leaves a fold empty")
    perm = np.random.default_rng(seed).permutation(n)
    return np.sort(perm[:n1]), np.sort(perm[n1:])


def fit_policy(
    data: FactorialDataset,
    spec: ObjectiveSpec,
    config: OptimizerConfig,
    *,
    table: PotentialOutcomeTable | None = None,
    box: list[tuple[float, float]] | None = None,
) -> OptimResult:
    """``argmax`` of the estimated objective on ``data``."""
    objective = make_objective(spec, ObjectiveInputs(data=data, table=table))
    return maximize(objective, config, K=data.K, box=box)


def split_estimate(
    data: FactorialDataset,
    split_fraction: float,
    spec: ObjectiveSpec,
    opt_config: OptimizerConfig,
    seed: int,
    *,
    eval_estimator: EstimatorName = "ipw",
    include_penalty: bool = True,
    table: PotentialOutcomeTable | None = None,
) -> SplitResult:
    idx1, idx2 = split_indices(data.n, split_fraction, seed)
    fold1, fold2 = data.subset(idx1), data.subset(idx2)
    fit = fit_policy(fold1, spec, opt_config, table=table)

    eval_spec = spec.model_copy(update={"estimator": eval_estimator})
    if not include_penalty:
        eval_spec = eval_spec.model_copy(update={"penalty": "none"})
    evaluate = make_objective(eval_spec, ObjectiveInputs(data=fold2, table=table))
    q_hat, _ = evaluate(fit.theta_hat.as_array())
    LOG.info(
        "split_estimate n1=%d n2=%d fit=%.6g q_hat=%.6g (%s on fold 2)",
        fold1.n,
        fold2.n,
        fit.value,
        q_hat,
        eval_spec.label(),
    )
    return SplitResult(
        theta_1=fit.theta_hat,
        q_hat=float(q_hat),
        n1=fold1.n,
        n2=fold2.n,
        seed=seed,
        fit_value=fit.value,
        estimator=eval_spec.label(),
        include_penalty=include_penalty,
    )


__all__ = ["fit_policy", "split_estimate", "split_indices"]

"""Factory: build a ``theta -> (value, gradient)`` closure from an ``ObjectiveSpec``."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from contracts.data import CellSummary, FactorialDataset
from contracts.design import PotentialOutcomeTable
from contracts.objective import ObjectiveSpec
from engine.design.policy import ThetaLike, theta_array
from engine.errors import ConfigurationError, DimensionMismatchError, InsufficientSampleError
from engine.estimators.cells import summarize_cells
from engine.estimators.variance import VarianceInputs, cell_sigma2
from engine.objective.gradient import (
    ValueAndGrad,
    cells_value_and_grad,
    hajek_value_and_grad,
    ipw_value_and_grad,
    mean_variance_value_and_grad,
)

LOG = logging.getLogger("factorial.objective")

Objective = Callable[[np.ndarray], ValueAndGrad]


@dataclass(frozen=True)
class ObjectiveInputs:
    """Whatever the chosen estimator needs: a dataset, a known table, or both.

    ``table`` supplies ``true_q`` values and, when present, the outcome
    variances used by ``mean_variance``; ``sigma2`` overrides both.
    """

    data: FactorialDataset | None = None
    table: PotentialOutcomeTable | None = None
    summary: CellSummary | None = None
    sigma2: np.ndarray | None = None

    @property
    def K(self) -> int:
        for src in (self.data, self.table, self.summary):
            if src is not None:
                return src.K
        raise ConfigurationError("objective inputs are empty")

    def cells(self) -> CellSummary:
        if self.summary is not None:
            return self.summary
        return summarize_cells(self._need_data("adaptive"))

    def _need_data(self, estimator: str) -> FactorialDataset:
        if self.data is None:
            raise ConfigurationError(f"estimator {estimator!r} needs a dataset")
        return self.data


def linear_objective(values: np.ndarray, lam: float) -> Objective:
    """``sum_t v_t P_theta(t) + lam * entropy`` over ``len(values) = 2**K`` cells."""
    v = np.asarray(values, dtype=np.float64)

    def objective(theta: np.ndarray) -> ValueAndGrad:
        return cells_value_and_grad(v, theta, lam)

    return objective


def make_objective(spec: ObjectiveSpec, inputs: ObjectiveInputs) -> Objective:
    """Construct the objective selected by ``spec.estimator``."""
    lam = spec.entropy_weight
    estimator = spec.estimator
    if estimator == "true_q":
        if inputs.table is None:
            raise ConfigurationError("estimator 'true_q' needs a potential-outcome table")
        return linear_objective(inputs.table.c, lam)
    if estimator == "adaptive":
        summary = inputs.cells()
        if summary.n_empty:
            LOG.warning(
                "adaptive objective: %d of %d cells empty, contributing c_hat = 0",
                summary.n_empty,
                summary.n_t.size,
            )
        return linear_objective(summary.c_hat, lam)
    data = inputs._need_data(estimator)
    if estimator == "ipw":
        return lambda theta: ipw_value_and_grad(data, theta, lam)
    if estimator == "hajek":
        return lambda theta: hajek_value_and_grad(data, theta, lam)
    if estimator == "mean_variance":
        if spec.variant != "plugin" and data.n < 2:
            raise InsufficientSampleError(f"variant {spec.variant!r} needs n >= 2, got n={data.n}")
        sigma2 = inputs.sigma2
        if sigma2 is None:
            sigma2 = cell_sigma2(data, inputs.table)
        var_inputs = VarianceInputs.from_data(data, sigma2)
        weight = spec.lam
        variant = spec.variant
        return lambda theta: mean_variance_value_and_grad(data, var_inputs, theta, weight, variant)
    raise ConfigurationError(f"unknown estimator: {estimator!r}")  # pragma: no cover - Literal exhaustive


def grad_q(spec: ObjectiveSpec, inputs: ObjectiveInputs, theta: ThetaLike) -> np.ndarray:
    arr = theta_array(theta)
    if arr.size != inputs.K:
        raise DimensionMismatchError(f"theta has K={arr.size}, inputs have K={inputs.K}")
    return make_objective(spec, inputs)(arr)[1]


def value_q(spec: ObjectiveSpec, inputs: ObjectiveInputs, theta: ThetaLike) -> float:
    arr = theta_array(theta)
    if arr.size != inputs.K:
        raise DimensionMismatchError(f"theta has K={arr.size}, inputs have K={inputs.K}")
    return make_objective(spec, inputs)(arr)[0]


__all__ = [
    "Objective",
    "ObjectiveInputs",
    "grad_q",
    "linear_objective",
    "make_objective",
    "value_q",
]

"""Analytic gradients against central finite differences."""

from __future__ import annotations

import numpy as np
import pytest
from contracts.design import AssignmentDist, PotentialOutcomeTable
from contracts.objective import ObjectiveSpec
from engine.objective.factory import ObjectiveInputs, grad_q, make_objective, value_q
from engine.objective.functions import q_mean_variance
from engine.objective.gradient import finite_difference_gradient
from services.harness.simulate import draw_dataset

SPECS = [
    ObjectiveSpec(estimator="true_q", lam=0.2),
    ObjectiveSpec(estimator="adaptive", lam=0.2),
    ObjectiveSpec(estimator="ipw", lam=0.2),
    ObjectiveSpec(estimator="ipw", lam=0.2, penalty="none"),
    ObjectiveSpec(estimator="hajek", lam=0.1),
    ObjectiveSpec(estimator="mean_variance", variant="plugin", lam=0.7),
    ObjectiveSpec(estimator="mean_variance", variant="u1", lam=0.7),
    ObjectiveSpec(estimator="mean_variance", variant="u2", lam=0.7),
]


def _inputs(seed: int, K: int = 4) -> ObjectiveInputs:
    rng = np.random.default_rng(seed)
    table = PotentialOutcomeTable.gaussian(rng.uniform(0, 1, 1 << K), rng.uniform(0.1, 0.5, 1 << K))
    data = draw_dataset(table, AssignmentDist.product(rng.uniform(0.3, 0.7, K)), 150, rng)
    return ObjectiveInputs(data=data, table=table)


@pytest.mark.parametrize("seed", range(100))
def test_gradient_matches_finite_differences(seed: int) -> None:
    # every estimator seen at every K in 1..6 across the instances
    spec = SPECS[seed % len(SPECS)]
    K = 1 + int(np.random.default_rng(500 + seed).integers(6))
    inputs = _inputs(seed, K)
    objective = make_objective(spec, inputs)
    theta = np.random.default_rng(100 + seed).uniform(0.1, 0.9, K)
    _, grad = objective(theta)
    fd = finite_difference_gradient(lambda t: objective(t)[0], theta)
    scale = max(1.0, float(np.abs(fd).max()))
    assert grad.shape == (K,)
    assert np.max(np.abs(grad - fd)) <= 1e-5 * scale


def test_gradient_instances_cover_every_factor_count() -> None:
    counts = {1 + int(np.random.default_rng(500 + seed).integers(6)) for seed in range(100)}
    assert counts == set(range(1, 7))


def test_factory_mean_variance_matches_direct_function() -> None:
    inputs = _inputs(7)
    assert inputs.data is not None and inputs.table is not None
    theta = np.array([0.2, 0.4, 0.6, 0.8])
    for variant in ("plugin", "u1", "u2"):
        spec = ObjectiveSpec(estimator="mean_variance", variant=variant, lam=0.5)
        direct = q_mean_variance(inputs.data, inputs.table.sigma**2, theta, 0.5, variant)
        assert value_q(spec, inputs, theta) == pytest.approx(direct, abs=1e-12)


def test_entropy_dominant_gradient_points_to_centre() -> None:
    inputs = _inputs(3)
    g = grad_q(ObjectiveSpec(estimator="true_q", lam=100.0), inputs, np.full(4, 0.9))
    assert np.all(g < 0)

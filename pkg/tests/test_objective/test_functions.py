"""Tests for the objective functions Q(theta) and their estimators."""

from __future__ import annotations

import math

import numpy as np
import pytest
from contracts.data import FactorialDataset
from contracts.design import AssignmentDist, PotentialOutcomeTable
from engine.design.combos import combo_bits
from engine.design.policy import cell_probabilities
from engine.errors import DimensionMismatchError
from engine.estimators.cells import summarize_cells
from engine.objective.functions import q_adaptive, q_hajek, q_ipw, q_ipw_cells, q_mean_variance, q_true
from services.harness.simulate import draw_dataset


def _exact_dataset(c: list[float], per_cell: int = 3) -> FactorialDataset:
    """Balanced dataset whose every outcome equals its cell mean."""
    K = int(math.log2(len(c)))
    bits = np.repeat(combo_bits(K), per_cell, axis=0)
    y = np.repeat(np.asarray(c), per_cell)
    return FactorialDataset(treatments=bits, y=y, dist=AssignmentDist.uniform(K))


def test_q_true_two_cells() -> None:
    table = PotentialOutcomeTable.bernoulli([0.2, 0.8])
    assert q_true(table, np.array([0.7])) == pytest.approx(0.62, abs=1e-12)


def test_q_true_constant_table() -> None:
    table = PotentialOutcomeTable.gaussian([0.4] * 8, 0.0)
    assert q_true(table, np.array([0.1, 0.6, 0.9])) == pytest.approx(0.4, abs=1e-12)


def test_q_true_with_entropy() -> None:
    table = PotentialOutcomeTable.gaussian([0.1, 0.2, 0.3, 0.4], 0.0)
    assert q_true(table, np.array([0.5, 0.5]), 0.5) == pytest.approx(0.943147, abs=1e-6)


def test_q_true_dimension_mismatch() -> None:
    with pytest.raises(DimensionMismatchError):
        q_true(PotentialOutcomeTable.bernoulli([0.2, 0.8]), np.array([0.5, 0.5]))


def test_adaptive_equals_true_on_exact_cell_means() -> None:
    c = [0.1, 0.35, 0.6, 0.9]
    table = PotentialOutcomeTable.gaussian(c, 0.0)
    summary = summarize_cells(_exact_dataset(c))
    theta = np.array([0.3, 0.8])
    assert q_adaptive(summary, theta, 0.2) == pytest.approx(q_true(table, theta, 0.2), abs=1e-12)


def test_adaptive_single_nonempty_cell() -> None:
    data = FactorialDataset.from_rows([((1, 0), 0.4), ((1, 0), 0.8)], AssignmentDist.uniform(2))
    theta = np.array([0.7, 0.2])
    expected = 0.6 * cell_probabilities(theta)[1]
    assert q_adaptive(summarize_cells(data), theta) == pytest.approx(expected, abs=1e-12)


def test_ipw_single_row() -> None:
    data = FactorialDataset.from_rows([((1,), 0.9)], AssignmentDist.uniform(1))
    assert q_ipw(data, np.array([0.8])) == pytest.approx(0.9 * 1.6)


def test_ipw_row_and_cell_forms_agree() -> None:
    rng = np.random.default_rng(4)
    table = PotentialOutcomeTable.bernoulli(rng.uniform(0.1, 0.9, 8))
    data = draw_dataset(table, AssignmentDist.uniform(3), 300, rng)
    theta = np.array([0.2, 0.55, 0.85])
    assert q_ipw(data, theta, 0.3) == pytest.approx(q_ipw_cells(summarize_cells(data), theta, 0.3), abs=1e-12)


def test_ipw_unbiased_two_factors() -> None:
    table = PotentialOutcomeTable.bernoulli([0.2, 0.4, 0.5, 0.8])
    dist = AssignmentDist.uniform(2)
    theta = np.array([0.3, 0.7])
    rng = np.random.default_rng(31)
    vals = np.array([q_ipw(draw_dataset(table, dist, 500, rng), theta) for _ in range(3000)])
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    assert abs(vals.mean() - q_true(table, theta)) <= 3 * se


def test_adaptive_bias_vanishes_when_cells_are_filled() -> None:
    table = PotentialOutcomeTable.bernoulli([0.2, 0.3, 0.35, 0.5, 0.55, 0.6, 0.7, 0.8])
    dist = AssignmentDist.uniform(3)
    theta = np.array([0.4, 0.6, 0.5])
    rng = np.random.default_rng(8)
    vals = np.array([q_adaptive(summarize_cells(draw_dataset(table, dist, 400, rng)), theta) for _ in range(2000)])
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    target = q_true(table, theta) * (1 - (1 - 2**-3) ** 400)
    assert abs(vals.mean() - target) <= 3 * se


def test_hajek_close_to_truth() -> None:
    table = PotentialOutcomeTable.bernoulli([0.2, 0.8])
    dist = AssignmentDist.uniform(1)
    theta = np.array([0.9])
    rng = np.random.default_rng(12)
    vals = np.array([q_hajek(draw_dataset(table, dist, 2000, rng), theta) for _ in range(1000)])
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    assert abs(vals.mean() - 0.74) <= 3 * se + 0.005


def test_mean_variance_constant_outcomes() -> None:
    data = _exact_dataset([0.6, 0.6])
    value = q_mean_variance(data, np.zeros(2), np.array([0.3]), 1.0, "plugin")
    assert value == pytest.approx(0.6, abs=1e-12)


def test_mean_variance_objective_mean() -> None:
    table = PotentialOutcomeTable.gaussian([0.2, 0.8], 0.4)
    dist = AssignmentDist.uniform(1)
    theta = np.array([0.5])
    sigma2 = table.sigma**2
    rng = np.random.default_rng(19)
    vals = np.array(
        [q_mean_variance(draw_dataset(table, dist, 500, rng), sigma2, theta, 1.0, "u2") for _ in range(2000)]
    )
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    assert abs(vals.mean() - 0.41) <= 3 * se + 0.005

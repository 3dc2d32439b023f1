"""Tests for the separation radius diagnostic."""

from __future__ import annotations

import math

import numpy as np
import pytest
from config.schema import OptimizerConfig
from contracts.design import PotentialOutcomeTable
from engine.errors import ConfigurationError, UndefinedRadiusError
from engine.objective.functions import q_true
from engine.objective.radius import implied_eta, separation_radius

TABLE = PotentialOutcomeTable.bernoulli([0.2, 0.8])


def test_radius_matches_dense_scan() -> None:
    lam, eta, res = 0.1, 1e-3, 1 / 200
    radius = separation_radius(TABLE, lam, eta, resolution=res)
    theta_star = 1 / (1 + math.exp(-0.6 / lam))
    q_star = q_true(TABLE, np.array([theta_star]), lam)
    eps = OptimizerConfig().eps_box
    grid = np.linspace(eps, 1 - eps, 201)
    near = [abs(g - theta_star) for g in grid if abs(q_true(TABLE, np.array([g]), lam) - q_star) <= eta]
    assert radius == pytest.approx(max(near), abs=1e-6)


def test_radius_non_increasing_in_lambda() -> None:
    radii = [separation_radius(TABLE, lam, 1e-3, resolution=5e-4) for lam in (1.0, 2.0, 4.0, 8.0)]
    assert all(b <= a for a, b in zip(radii, radii[1:]))


def test_eta_beyond_range_is_undefined() -> None:
    with pytest.raises(UndefinedRadiusError):
        separation_radius(TABLE, 0.0, 1.0)


def test_radius_rejects_large_k() -> None:
    table = PotentialOutcomeTable.bernoulli([0.5] * (1 << 11))
    with pytest.raises(ConfigurationError):
        separation_radius(table, 0.1, 1e-3)


def test_grid_size_capped() -> None:
    table = PotentialOutcomeTable.bernoulli([0.5] * 8)
    with pytest.raises(ConfigurationError):
        separation_radius(table, 0.1, 1e-3, resolution=1e-3, max_points=1000)


def test_implied_eta() -> None:
    assert implied_eta(2, 100) == pytest.approx(math.sqrt(4 * math.log(4) / 100))

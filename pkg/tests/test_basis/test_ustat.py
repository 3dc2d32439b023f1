"""Tests for U-statistic coefficient estimates."""

from __future__ import annotations

import numpy as np
import pytest
from config.schema import BasisConfig
from contracts.data import RegressionSample
from engine.basis.family import indicator_partition, table_family
from engine.basis.ustat import planted_coefficients, u_stat_coefficients
from engine.errors import DimensionMismatchError
from services.harness.simulate import generate_regression


def _double_sum(sample: RegressionSample, phi: np.ndarray) -> np.ndarray:
    a = sample.y[:, None] * phi
    n = sample.n
    total = np.zeros(phi.shape[1])
    for i in range(n):
        for j in range(n):
            if i != j:
                total += a[i] * a[j]
    return total / (n * (n - 1))


def test_two_point_example() -> None:
    family = table_family(np.array([[1.0, 0.5]]), (2,))
    sample = RegressionSample(x=[0.25, 0.75], y=[1.0, 2.0])
    assert u_stat_coefficients(sample, family)[0] == pytest.approx(1.0)


def test_zero_response_gives_zero_coefficients() -> None:
    sample = RegressionSample(x=np.linspace(0, 1, 10), y=np.zeros(10))
    assert np.all(u_stat_coefficients(sample, indicator_partition(1, 4)) == 0.0)


@pytest.mark.parametrize("seed", range(50))
def test_matches_pairwise_double_sum(seed: int) -> None:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 51))
    family = table_family(rng.normal(size=(4, 8)), (8,))
    sample = RegressionSample(x=rng.random(n), y=rng.normal(size=n))
    expected = _double_sum(sample, family.design_matrix(sample.x))
    assert np.allclose(u_stat_coefficients(sample, family), expected, rtol=1e-9, atol=1e-12)


def test_planted_coefficient_is_unbiased() -> None:
    cfg = BasisConfig(p=8, strong=[5], beta=3.0, noise_sd=0.0, n=200)
    family = indicator_partition(1, 8)
    rng = np.random.default_rng(7)
    runs = np.asarray([u_stat_coefficients(generate_regression(cfg, family, rng), family) for _ in range(1000)])
    se = runs[:, 5].std(ddof=1) / np.sqrt(runs.shape[0])
    assert abs(runs[:, 5].mean() - 9.0) <= 3 * se
    # noiseless signal lives on cell 5 only
    assert np.all(np.delete(runs, 5, axis=1) == 0.0)


def test_clamp_negative_floors_at_zero() -> None:
    rng = np.random.default_rng(3)
    sample = RegressionSample(x=rng.random(30), y=rng.normal(size=30))
    family = indicator_partition(1, 16)
    raw = u_stat_coefficients(sample, family)
    clamped = u_stat_coefficients(sample, family, clamp_negative=True)
    assert raw.min() < 0
    assert np.array_equal(clamped, np.maximum(raw, 0.0))


def test_planted_coefficients() -> None:
    assert planted_coefficients(4, {1: 3.0, 2: -2.0}).tolist() == [0.0, 9.0, 4.0, 0.0]


def test_dimension_mismatch() -> None:
    sample = RegressionSample(x=np.random.default_rng(0).random((5, 2)), y=np.ones(5))
    with pytest.raises(DimensionMismatchError):
        u_stat_coefficients(sample, indicator_partition(1, 4))

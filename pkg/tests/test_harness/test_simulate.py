"""Tests for reproducible synthetic data generation."""

from __future__ import annotations

import numpy as np
from config.schema import BasisConfig, SimConfig
from engine.basis.family import indicator_partition
from services.harness.simulate import (
    generate,
    generate_regression,
    planted_signal,
    replicate_rng,
    sub_seed,
)


def test_replicate_streams_are_reproducible_and_distinct() -> None:
    a = replicate_rng(7, 3).random(5)
    assert np.array_equal(a, replicate_rng(7, 3).random(5))
    assert not np.array_equal(a, replicate_rng(7, 4).random(5))
    assert not np.array_equal(a, replicate_rng(8, 3).random(5))


def test_sub_seed_depends_on_every_key() -> None:
    assert sub_seed(1, 2, 3) == sub_seed(1, 2, 3)
    assert len({sub_seed(1), sub_seed(1, 0), sub_seed(1, 1), sub_seed(2, 0)}) == 4


def test_generate_is_indexed_by_replicate() -> None:
    cfg = SimConfig(K=3, n=50)
    first = generate(cfg, 0, master_seed=11)
    again = generate(cfg, 0, master_seed=11)
    other = generate(cfg, 1, master_seed=11)
    assert np.array_equal(first.treatments, again.treatments)
    assert np.array_equal(first.y, again.y)
    assert not np.array_equal(first.y, other.y) or not np.array_equal(first.treatments, other.treatments)
    assert (first.n, first.K) == (50, 3)


def test_bernoulli_outcomes_are_binary() -> None:
    data = generate(SimConfig(K=2, n=500), 0)
    assert set(np.unique(data.y)) <= {0.0, 1.0}


def test_gaussian_cell_means() -> None:
    cfg = SimConfig(K=1, n=20_000, c=[0.2, 0.8], family="gaussian", sigma=0.4)
    data = generate(cfg, 0)
    for cell, mean in enumerate(cfg.c or []):
        ys = data.y[data.cell_index == cell]
        assert abs(ys.mean() - mean) <= 4 * 0.4 / np.sqrt(ys.size)


def test_product_assignment_marginals() -> None:
    data = generate(SimConfig(K=2, n=20_000, assignment="product", pi=[0.2, 0.7]), 0)
    share = data.treatments.mean(axis=0)
    assert np.allclose(share, [0.2, 0.7], atol=0.02)


def test_regression_sample_follows_planted_signal() -> None:
    cfg = BasisConfig(p=8, strong=[2], beta=3.0, noise_sd=0.0, n=100)
    family = indicator_partition(1, 8)
    sample = generate_regression(cfg, family, np.random.default_rng(0))
    assert sample.n == 100
    expected = planted_signal(family, {2: 3.0})[family.cell_of(sample.x)]
    assert np.allclose(sample.y, expected)
    assert planted_signal(family, {2: 3.0})[2] == 3.0 * np.sqrt(8)

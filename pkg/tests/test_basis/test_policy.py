"""Tests for bit-encoded basis sampling policies."""

from __future__ import annotations

import numpy as np
import pytest
from config.schema import OptimizerConfig
from contracts.design import EPS_BOX, ThetaVector
from contracts.results import BitPolicy
from engine.basis.policy import alpha_from_theta, optimize_policy, policy_value, sample_bases, select_bases
from engine.errors import ConfigurationError
from engine.objective.factory import linear_objective
from engine.optimizer.ascent import maximize
from scipy.optimize import brentq


def _policy(*theta: float) -> BitPolicy:
    return BitPolicy(theta=ThetaVector(values=theta))


def test_alpha_uniform() -> None:
    assert np.allclose(alpha_from_theta(_policy(0.5, 0.5)), 0.25)


def test_alpha_most_significant_bit_is_coin_one() -> None:
    assert np.allclose(alpha_from_theta(_policy(0.9, 0.2)), [0.08, 0.02, 0.72, 0.18])


@pytest.mark.parametrize("seed", range(5))
def test_alpha_sums_to_one(seed: int) -> None:
    theta = np.random.default_rng(seed).uniform(0.01, 0.99, 6)
    assert abs(alpha_from_theta(_policy(*theta)).sum() - 1.0) <= 1e-12


def test_constant_coefficients_give_uniform_policy() -> None:
    policy = optimize_policy(np.full(8, 2.0), 0.1, OptimizerConfig())
    assert np.allclose(policy.theta.as_array(), 0.5, atol=1e-6)


def test_last_index_without_penalty_goes_to_corner() -> None:
    c = np.zeros(8)
    c[-1] = 1.0
    policy = optimize_policy(c, 0.0, OptimizerConfig())
    assert policy.theta.values == (1 - EPS_BOX,) * 3


def test_single_spike_matches_symmetric_optimum() -> None:
    c = np.zeros(8)
    c[7] = 5.0
    lam = 0.5
    # stationary point of the symmetric diagonal: 5 t^2 + lam * logit(1 - t) = 0
    t = brentq(lambda u: 5 * u * u + lam * np.log((1 - u) / u), 0.5, 1 - 1e-12)
    policy = optimize_policy(c, lam, OptimizerConfig())
    assert np.allclose(policy.theta.as_array(), t, atol=1e-3)


def test_matches_factorial_optimisation_reversed() -> None:
    c = np.random.default_rng(2).normal(size=16)
    cfg = OptimizerConfig(seed=4)
    policy = optimize_policy(c, 0.2, cfg)
    direct = maximize(linear_objective(c, 0.2), cfg, K=4)
    assert policy.theta.values[::-1] == direct.theta_hat.values
    assert policy_value(c, policy, 0.2) == pytest.approx(direct.value, abs=1e-12)


def test_optimize_rejects_non_power_of_two() -> None:
    with pytest.raises(ConfigurationError):
        optimize_policy(np.ones(6), 0.1, OptimizerConfig())


def test_corner_policy_always_draws_last_index() -> None:
    draws = sample_bases(_policy(1 - EPS_BOX, 1 - EPS_BOX, 1 - EPS_BOX), 100, seed=0)
    assert np.all(draws == 7)


def test_uniform_policy_draws_uniform_indices() -> None:
    p, k = 8, 100_000
    draws = sample_bases(_policy(0.5, 0.5, 0.5), k, seed=1)
    freq = np.bincount(draws, minlength=p) / k
    assert np.all(np.abs(freq - 1 / p) <= 4 * np.sqrt((1 / p) / k))


def test_sampling_is_deterministic_given_seed() -> None:
    policy = _policy(0.3, 0.6, 0.8)
    assert np.array_equal(sample_bases(policy, 50, seed=9), sample_bases(policy, 50, seed=9))


def test_dedup_returns_distinct_indices() -> None:
    draws = sample_bases(_policy(0.5, 0.5), 4, seed=2, dedup=True)
    assert sorted(draws.tolist()) == [0, 1, 2, 3]


def test_dedup_gives_up_when_policy_is_degenerate() -> None:
    draws = sample_bases(_policy(1 - EPS_BOX, 1 - EPS_BOX), 3, seed=0, dedup=True, max_rounds=2)
    assert draws.size < 3


def test_sample_needs_positive_k() -> None:
    with pytest.raises(ConfigurationError):
        sample_bases(_policy(0.5), 0, seed=0)


def test_deflate_recovers_planted_set() -> None:
    c = np.zeros(256)
    c[[17, 100, 201]] = 9.0
    selection = select_bases(c, 3, 0.01, OptimizerConfig(starts=4), seed=0)
    assert set(selection.indices) == {17, 100, 201}
    assert selection.strategy == "deflate"
    assert selection.c_hat == tuple(c)


def test_iid_orders_by_frequency() -> None:
    selection = select_bases(np.arange(4.0), 2, 1.0, OptimizerConfig(), seed=3, strategy="iid")
    assert selection.indices == (3, 2)


@pytest.mark.parametrize("k", [0, 9])
def test_select_rejects_bad_k(k: int) -> None:
    with pytest.raises(ConfigurationError):
        select_bases(np.ones(8), k, 0.1, OptimizerConfig(), seed=0)


def test_select_rejects_unknown_strategy() -> None:
    with pytest.raises(ConfigurationError):
        select_bases(np.ones(8), 2, 0.1, OptimizerConfig(), seed=0, strategy="greedy")  # type: ignore[arg-type]


def test_deflate_value_scores_last_policy_on_original_coefficients() -> None:
    c = np.zeros(64)
    c[[5, 40]] = 4.0
    selection = select_bases(c, 2, 0.05, OptimizerConfig(starts=4), seed=1)
    assert selection.value == pytest.approx(policy_value(c, selection.policy, 0.05), abs=1e-12)
    assert len(selection.round_values) == 2
    # the second round fits against c with the first pick zeroed
    deflated = c.copy()
    deflated[selection.indices[0]] = 0.0
    assert selection.round_values[1] == pytest.approx(policy_value(deflated, selection.policy, 0.05), abs=1e-12)


def test_iid_keeps_single_round_value() -> None:
    c = np.arange(8.0)
    selection = select_bases(c, 3, 0.5, OptimizerConfig(), seed=2, strategy="iid")
    assert selection.round_values == (pytest.approx(selection.value, abs=1e-12),)

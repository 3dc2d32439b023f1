"""Bit-encoded sampling policies over basis indices.

Index ``j`` in ``[0, 2**l)`` is written ``b_1 ... b_l`` with ``b_1`` the most
significant bit; coin ``m`` has success probability ``theta_m``. The
factorial cell order puts factor 1 on the least significant bit, so a
factorial policy ``phi`` over the same values is ``theta`` reversed.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Literal

import numpy as np

from config.schema import OptimizerConfig
from contracts.design import MAX_ENUM_K, ThetaVector
from contracts.results import BasisSelection, BitPolicy
from engine.design.policy import cell_probabilities, entropy
from engine.errors import ConfigurationError
from engine.objective.factory import linear_objective
from engine.optimizer.ascent import maximize

LOG = logging.getLogger("factorial.basis")


def _coins(p: int) -> int:
    if p < 2 or p & (p - 1):
        raise ConfigurationError(f"p={p} must be a power of two >= 2")
    l = p.bit_length() - 1  # noqa: E741
    if l > MAX_ENUM_K:
        raise ConfigurationError(f"p=2**{l} exceeds 2**{MAX_ENUM_K}")
    return l


def alpha_from_theta(policy: BitPolicy) -> np.ndarray:
    """``alpha_theta(j)`` for every index ``j``."""
    return cell_probabilities(policy.theta.as_array()[::-1])


def policy_value(c_hat: np.ndarray, policy: BitPolicy, lam: float) -> float:
    return float(alpha_from_theta(policy) @ c_hat) + lam * entropy(policy.theta)


def optimize_policy(c_hat: np.ndarray, lam: float, config: OptimizerConfig) -> BitPolicy:
    """Maximise ``sum_j c_hat_j alpha_theta(j) + lam * entropy(theta)``."""
    values = np.asarray(c_hat, dtype=np.float64)
    l = _coins(values.size)  # noqa: E741
    result = maximize(linear_objective(values, lam), config, K=l)
    phi = result.theta_hat.as_array()
    return BitPolicy(theta=ThetaVector(values=tuple(float(v) for v in phi[::-1]), eps=config.eps_box))


def sample_bases(
    policy: BitPolicy,
    k: int,
    seed: int | np.random.Generator,
    *,
    dedup: bool = False,
    max_rounds: int = 1000,
) -> np.ndarray:
    """``k`` i.i.d. indices drawn by flipping ``l`` coins each.

    With ``dedup`` the first ``k`` distinct indices are returned; fewer come
    back if the policy cannot produce ``k`` distinct ones within
    ``max_rounds`` batches.
    """
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    theta = policy.theta.as_array()
    weights = np.int64(1) << np.arange(policy.l - 1, -1, -1, dtype=np.int64)

    def draw(count: int) -> np.ndarray:
        coins = rng.random((count, policy.l)) < theta
        return coins.astype(np.int64) @ weights

    if not dedup:
        return draw(k)
    seen: dict[int, None] = {}
    for _ in range(max_rounds):
        for j in draw(k):
            seen.setdefault(int(j), None)
            if len(seen) == k:
                return np.fromiter(seen, dtype=np.int64)
    LOG.warning("sample_bases: only %d distinct indices after %d rounds", len(seen), max_rounds)
    return np.fromiter(seen, dtype=np.int64)


def _modal(draws: np.ndarray, exclude: set[int]) -> int | None:
    counts = Counter(int(j) for j in draws if int(j) not in exclude)
    if not counts:
        return None
    return min(counts, key=lambda j: (-counts[j], j))


def select_bases(
    c_hat: np.ndarray,
    k: int,
    lam: float,
    config: OptimizerConfig,
    seed: int,
    *,
    strategy: Literal["iid", "deflate"] = "deflate",
    draws: int = 1000,
    padded: int = 0,
) -> BasisSelection:
    """Pick ``k`` basis indices.

    ``iid``: one optimised policy, ``draws`` samples, the ``k`` most frequent
    indices. ``deflate``: ``k`` rounds, each optimising on the current
    coefficients, keeping the modal unselected draw and zeroing its
    coefficient before the next round.

    ``value`` scores the last fitted policy on the original ``c_hat``;
    ``round_values`` keeps each round's objective on the deflated
    coefficients it was optimised against.
    """
    values = np.asarray(c_hat, dtype=np.float64).copy()
    _coins(values.size)
    if not 1 <= k <= values.size:
        raise ConfigurationError(f"k must be in [1, {values.size}], got {k}")
    rng = np.random.default_rng(seed)
    chosen: list[int] = []
    rounds: list[float] = []
    if strategy == "iid":
        policy = optimize_policy(values, lam, config)
        rounds.append(policy_value(values, policy, lam))
        sample = sample_bases(policy, draws, rng)
        while len(chosen) < k:
            j = _modal(sample, set(chosen))
            if j is None:
                break
            chosen.append(j)
    elif strategy == "deflate":
        for _ in range(k):
            policy = optimize_policy(values, lam, config)
            rounds.append(policy_value(values, policy, lam))
            j = _modal(sample_bases(policy, draws, rng), set(chosen))
            if j is None:
                LOG.warning("deflate round drew only selected indices; stopping at %d", len(chosen))
                break
            chosen.append(j)
            values[j] = 0.0
        values = np.asarray(c_hat, dtype=np.float64)
    else:
        raise ConfigurationError(f"unknown selection strategy: {strategy!r}")
    LOG.info("select_bases strategy=%s k=%d -> %s", strategy, k, chosen)
    return BasisSelection(
        indices=tuple(chosen),
        c_hat=tuple(float(v) for v in values),
        policy=policy,
        p=values.size,
        padded=padded,
        strategy=strategy,
        value=policy_value(values, policy, lam),
        round_values=tuple(rounds),
    )


__all__ = [
    "alpha_from_theta",
    "optimize_policy",
    "policy_value",
    "sample_bases",
    "select_bases",
]

"""Synthetic data generation with indexed, reproducible seeding."""

from __future__ import annotations

import numpy as np

from config.schema import BasisConfig, SimConfig
from contracts.data import FactorialDataset, RegressionSample
from contracts.design import AssignmentDist, PotentialOutcomeTable
from engine.basis.family import BasisFamily
from engine.design.combos import bits_to_index


def replicate_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent stream for replicate ``index`` of a run seeded by ``master_seed``."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def sub_seed(master_seed: int, *keys: int) -> int:
    """Derived master seed for one cell of a grid experiment."""
    return int(np.random.SeedSequence([master_seed, *keys]).generate_state(1)[0])


def draw_dataset(
    table: PotentialOutcomeTable, dist: AssignmentDist, n: int, rng: np.random.Generator
) -> FactorialDataset:
    bits = rng.random((n, dist.K)) < dist.marginals()
    idx = bits_to_index(bits)
    if table.family == "bernoulli":
        y = (rng.random(n) < table.c[idx]).astype(np.float64)
    else:
        y = table.c[idx] + table.sigma[idx] * rng.standard_normal(n)
    return FactorialDataset(treatments=bits.astype(np.uint8), y=y, dist=dist)


def generate(config: SimConfig, replicate_index: int, master_seed: int = 0) -> FactorialDataset:
    """``config.n`` i.i.d. units; identical ``(master_seed, replicate_index)`` give identical data."""
    return draw_dataset(config.table(), config.dist(), config.n, replicate_rng(master_seed, replicate_index))


def planted_signal(family: BasisFamily, strong: dict[int, float]) -> np.ndarray:
    """Values of ``b = sum_q beta_q phi_q`` on each partition cell."""
    values = np.zeros(family.table.shape[1])
    for q, beta in strong.items():
        if q < family.p_raw:
            values += beta * family.table[q]
    return values


def generate_regression(
    config: BasisConfig, family: BasisFamily, rng: np.random.Generator
) -> RegressionSample:
    """Uniform covariates, ``Y = b(X) + noise`` with ``b`` planted on ``config.strong``."""
    signal = planted_signal(family, {q: config.beta for q in config.strong})
    x = rng.random((config.n, config.d))
    y = signal[family.cell_of(x)] + config.noise_sd * rng.standard_normal(config.n)
    return RegressionSample(x=x, y=y)


__all__ = [
    "draw_dataset",
    "generate",
    "generate_regression",
    "planted_signal",
    "replicate_rng",
    "sub_seed",
]

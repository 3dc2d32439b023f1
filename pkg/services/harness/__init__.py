"""Synthetic data generation and Monte Carlo validation claims."""

from __future__ import annotations

from services.harness.claims import CLAIMS, FIXTURES, curse_diagnostic, fixture_config, run_claim
from services.harness.runner import THREADS_ENV, run_replicates, thread_count
from services.harness.simulate import (
    draw_dataset,
    generate,
    generate_regression,
    replicate_rng,
    sub_seed,
)

__all__ = [
    "CLAIMS",
    "FIXTURES",
    "THREADS_ENV",
    "curse_diagnostic",
    "draw_dataset",
    "fixture_config",
    "generate",
    "generate_regression",
    "replicate_rng",
    "run_claim",
    "run_replicates",
    "sub_seed",
    "thread_count",
]

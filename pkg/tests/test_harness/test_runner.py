"""Tests for the replicate runner."""

from __future__ import annotations

import numpy as np
import pytest
from engine.errors import ConfigurationError
from services.harness.runner import THREADS_ENV, run_replicates, thread_count
from services.harness.simulate import replicate_rng


def _draw(i: int, rng: np.random.Generator) -> tuple[int, float]:
    return i, float(rng.random())


def test_results_in_index_order_with_indexed_streams() -> None:
    out = run_replicates(_draw, 6, master_seed=4, n_jobs=1)
    assert [i for i, _ in out] == list(range(6))
    assert out[3][1] == replicate_rng(4, 3).random()


def test_parallel_matches_serial() -> None:
    assert run_replicates(_draw, 20, 9, n_jobs=1) == run_replicates(_draw, 20, 9, n_jobs=3)


def test_thread_count_defaults_to_one(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert thread_count() == 1


def test_thread_count_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(THREADS_ENV, "4")
    assert thread_count() == 4
    assert run_replicates(_draw, 5, 1) == run_replicates(_draw, 5, 1, n_jobs=1)


@pytest.mark.parametrize("raw", ["zero", "0", "-2"])
def test_invalid_thread_count(monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
    monkeypatch.setenv(THREADS_ENV, raw)
    with pytest.raises(ConfigurationError):
        thread_count()

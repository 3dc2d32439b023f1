"""Tests for the high-dimensional box restriction."""

from __future__ import annotations

import pytest
from contracts.design import EPS_BOX
from engine.errors import ConfigurationError, InfeasibleBoxError
from engine.optimizer.box import highdim_box, highdim_nu


def test_nu_example() -> None:
    assert highdim_nu(12, 4096, 0.1) == pytest.approx(0.1 ** (1 / 12), abs=1e-9)
    assert highdim_nu(12, 4096, 0.1) == pytest.approx(0.825404, abs=1e-6)


def test_empty_interior_rejected() -> None:
    with pytest.raises(InfeasibleBoxError):
        highdim_nu(10, 1024, 2.0**-10)


def test_nu_capped_at_clamp() -> None:
    assert highdim_nu(2, 10_000, 5.0) == 1 - EPS_BOX


def test_box_is_symmetric() -> None:
    box = highdim_box(12, 4096, 0.1)
    assert len(box) == 12
    lo, hi = box[0]
    assert lo == pytest.approx(1 - hi)


@pytest.mark.parametrize(("K", "n", "C"), [(0, 10, 1.0), (3, 0, 1.0), (3, 10, 0.0)])
def test_invalid_arguments(K: int, n: int, C: float) -> None:
    with pytest.raises(ConfigurationError):
        highdim_nu(K, n, C)

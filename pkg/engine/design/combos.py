"""Enumeration of the ``2**K`` treatment cells."""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from contracts.design import MAX_ENUM_K, TreatmentCombo
from engine.errors import ConfigurationError


def n_cells(K: int) -> int:
    if not 1 <= K <= MAX_ENUM_K:
        raise ConfigurationError(f"K={K} outside the enumerable range [1, {MAX_ENUM_K}]")
    return 1 << K


def combo_bits(K: int) -> np.ndarray:
    """``(2**K, K)`` uint8 matrix; row ``j`` holds the bits of cell ``j``."""
    idx = np.arange(n_cells(K), dtype=np.int64)
    return ((idx[:, None] >> np.arange(K)) & 1).astype(np.uint8)


def popcount(K: int) -> np.ndarray:
    return combo_bits(K).sum(axis=1, dtype=np.int64)


def all_combos(K: int) -> Iterator[TreatmentCombo]:
    for j in range(n_cells(K)):
        yield TreatmentCombo.from_index(j, K)


def bits_to_index(bits: np.ndarray) -> np.ndarray:
    """Cell index of each row of an ``(n, K)`` bit matrix."""
    bits = np.asarray(bits, dtype=np.int64)
    return bits @ (np.int64(1) << np.arange(bits.shape[1], dtype=np.int64))

"""Dataset contracts: factorial experiments, per-cell summaries, regression samples.

Row-shaped data is stored column-wise in read-only numpy arrays so that
datasets stay immutable and cheap to share across worker processes.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import Any

import numpy as np
from pydantic import field_validator, model_validator

from contracts.design import AssignmentDist, TreatmentCombo, _FrozenArrays, frozen_array


class FactorialDataset(_FrozenArrays):
    """``n`` units with their treatment bits and outcome, plus the known design."""

    treatments: np.ndarray  # (n, K) uint8
    y: np.ndarray  # (n,) float64
    dist: AssignmentDist

    @field_validator("treatments", mode="before")
    @classmethod
    def _bits(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("treatments must be an (n, K) array")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("treatments must be 0/1")
        return frozen_array(arr, np.uint8)

    @field_validator("y", mode="before")
    @classmethod
    def _outcomes(cls, v: Any) -> np.ndarray:
        arr = frozen_array(v).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("outcomes must be finite")
        return arr

    @model_validator(mode="after")
    def _shapes(self) -> FactorialDataset:
        n, K = self.treatments.shape
        if n < 1:
            raise ValueError("a dataset needs n >= 1 rows")
        if self.y.shape != (n,):
            raise ValueError(f"y has {self.y.shape[0]} rows, treatments have {n}")
        if self.dist.K != K:
            raise ValueError(f"assignment is for K={self.dist.K}, rows have K={K}")
        return self

    @property
    def n(self) -> int:
        return int(self.treatments.shape[0])

    @property
    def K(self) -> int:
        return int(self.treatments.shape[1])

    @property
    def cell_index(self) -> np.ndarray:
        """Per-row cell index (bit ``k`` = factor ``k + 1``)."""
        weights = np.left_shift(np.int64(1), np.arange(self.K, dtype=np.int64))
        return self.treatments.astype(np.int64) @ weights

    def rows(self) -> Iterator[tuple[TreatmentCombo, float]]:
        for bits, y in zip(self.treatments, self.y):
            yield TreatmentCombo(bits=tuple(int(b) for b in bits)), float(y)

    def subset(self, idx: np.ndarray) -> FactorialDataset:
        return FactorialDataset(treatments=self.treatments[idx], y=self.y[idx], dist=self.dist)

    @classmethod
    def from_rows(
        cls, rows: Iterable[tuple[TreatmentCombo | tuple[int, ...], float]], dist: AssignmentDist
    ) -> FactorialDataset:
        bits: list[tuple[int, ...]] = []
        ys: list[float] = []
        for combo, y in rows:
            bits.append(combo.bits if isinstance(combo, TreatmentCombo) else tuple(combo))
            ys.append(float(y))
        return cls(treatments=np.asarray(bits, dtype=np.uint8).reshape(len(ys), -1), y=ys, dist=dist)


class CellSummary(_FrozenArrays):
    """Per-cell statistics, arrays indexed by cell index.

    ``c_hat`` is the adaptive (cell-mean) estimate, 0 for empty cells;
    ``c_tilde`` is the weighting estimate ``sum_y / (n P(T = t))``.
    """

    K: int
    n: int
    n_t: np.ndarray
    sum_y: np.ndarray
    sumsq_y: np.ndarray
    c_hat: np.ndarray
    c_tilde: np.ndarray
    empty: np.ndarray

    @field_validator("n_t", mode="before")
    @classmethod
    def _counts(cls, v: Any) -> np.ndarray:
        return frozen_array(v, np.int64)

    @field_validator("empty", mode="before")
    @classmethod
    def _flags(cls, v: Any) -> np.ndarray:
        return frozen_array(v, np.bool_)

    @field_validator("sum_y", "sumsq_y", "c_hat", "c_tilde", mode="before")
    @classmethod
    def _floats(cls, v: Any) -> np.ndarray:
        return frozen_array(v)

    @model_validator(mode="after")
    def _consistent(self) -> CellSummary:
        m = 1 << self.K
        for name in ("n_t", "sum_y", "sumsq_y", "c_hat", "c_tilde", "empty"):
            if getattr(self, name).shape != (m,):
                raise ValueError(f"{name} must have {m} entries")
        if int(self.n_t.sum()) != self.n:
            raise ValueError("cell counts must sum to n")
        if not np.array_equal(self.empty, self.n_t == 0):
            raise ValueError("empty flags must match n_t == 0")
        if np.any(self.c_hat[self.empty] != 0):
            raise ValueError("empty cells must carry c_hat = 0")
        return self

    @property
    def n_empty(self) -> int:
        return int(self.empty.sum())


class RegressionSample(_FrozenArrays):
    """Regression data ``(x_i, y_i)`` with covariates in the unit cube."""

    x: np.ndarray  # (n, d)
    y: np.ndarray  # (n,)

    @field_validator("x", mode="before")
    @classmethod
    def _unit_cube(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("x must be an (n, d) array")
        if np.any(arr < 0) or np.any(arr > 1) or not np.all(np.isfinite(arr)):
            raise ValueError("covariates must lie in the unit cube [0, 1]^d")
        return frozen_array(arr)

    @field_validator("y", mode="before")
    @classmethod
    def _response(cls, v: Any) -> np.ndarray:
        arr = frozen_array(v).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("responses must be finite")
        return arr

    @model_validator(mode="after")
    def _shapes(self) -> RegressionSample:
        if self.x.shape[0] != self.y.shape[0]:
            raise ValueError("x and y must have the same number of rows")
        if self.n < 2:
            raise ValueError("a regression sample needs n >= 2 rows")
        return self

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def d(self) -> int:
        return int(self.x.shape[1])


__all__ = ["CellSummary", "FactorialDataset", "RegressionSample"]

"""Piecewise-constant basis families on a regular partition of ``[0, 1]^d``.

A family is a table of values: row ``j`` holds ``phi_j`` on each partition
cell. The basis count is padded with zero functions up to the next power of
two so indices can be encoded by coin flips.
"""

from __future__ import annotations

import math
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from contracts.design import frozen_array
from engine.errors import ConfigurationError, DimensionMismatchError


def next_power_of_two(p: int) -> int:
    return 1 << max(p - 1, 0).bit_length()


class BasisFamily(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    kind: Literal["indicator", "table"]
    shape: tuple[int, ...]  # partition cells per axis
    table: np.ndarray  # (p_raw, prod(shape))

    @field_validator("table", mode="before")
    @classmethod
    def _as_array(cls, v: Any) -> np.ndarray:
        return frozen_array(v)

    @model_validator(mode="after")
    def _consistent(self) -> BasisFamily:
        if not self.shape or any(s < 1 for s in self.shape):
            raise ValueError("partition shape must list >= 1 cells per axis")
        if self.table.ndim != 2 or self.table.shape[1] != math.prod(self.shape):
            raise ValueError("table must be (p_raw, number of partition cells)")
        if self.table.shape[0] < 1:
            raise ValueError("a basis family needs at least one function")
        return self

    @property
    def d(self) -> int:
        return len(self.shape)

    @property
    def p_raw(self) -> int:
        return int(self.table.shape[0])

    @property
    def p(self) -> int:
        return next_power_of_two(self.p_raw)

    @property
    def padded(self) -> int:
        return self.p - self.p_raw

    @property
    def l(self) -> int:  # noqa: E743
        return self.p.bit_length() - 1

    def cell_of(self, x: np.ndarray) -> np.ndarray:
        pts = np.asarray(x, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.shape[1] != self.d:
            raise DimensionMismatchError(f"points have d={pts.shape[1]}, family has d={self.d}")
        shape = np.asarray(self.shape)
        idx = np.minimum(np.floor(pts * shape).astype(np.int64), shape - 1)
        strides = np.concatenate(([1], np.cumprod(shape[:-1])))
        return idx @ strides

    def design_matrix(self, x: np.ndarray) -> np.ndarray:
        """``(n, p)`` matrix of ``phi_j(x_i)``; padded columns are zero."""
        cells = self.cell_of(x)
        phi = np.zeros((cells.size, self.p))
        phi[:, : self.p_raw] = self.table[:, cells].T
        return phi

    def evaluate(self, j: int, x: np.ndarray) -> np.ndarray:
        if not 0 <= j < self.p:
            raise ConfigurationError(f"basis index {j} outside [0, {self.p})")
        if j >= self.p_raw:
            return np.zeros(self.cell_of(x).size)
        return self.table[j, self.cell_of(x)]

    def gram(self) -> np.ndarray:
        """Inner products under the uniform density; exact for piecewise-constant bases."""
        return self.table @ self.table.T / self.table.shape[1]

    def is_orthonormal(self, tol: float = 1e-8) -> bool:
        return bool(np.allclose(self.gram(), np.eye(self.p_raw), rtol=0.0, atol=tol))


def indicator_partition(d: int, p: int) -> BasisFamily:
    """``sqrt(p)`` times the indicators of ``p`` equal-volume boxes.

    For ``d > 1``, ``p`` must be a power of two; its bits are dealt to the
    axes round-robin, so axis ``a`` is split into ``2**l_a`` slabs.
    """
    if d < 1 or p < 1:
        raise ConfigurationError("indicator partition needs d >= 1 and p >= 1")
    if d == 1:
        shape: tuple[int, ...] = (p,)
    else:
        if p & (p - 1):
            raise ConfigurationError(f"p={p} must be a power of two when d={d} > 1")
        l = p.bit_length() - 1  # noqa: E741
        shape = tuple(1 << len(range(a, l, d)) for a in range(d))
    return BasisFamily(kind="indicator", shape=shape, table=math.sqrt(p) * np.eye(p))


def table_family(table: np.ndarray, shape: tuple[int, ...]) -> BasisFamily:
    """User-supplied piecewise-constant basis values on a ``shape`` partition."""
    return BasisFamily(kind="table", shape=tuple(shape), table=table)


__all__ = ["BasisFamily", "indicator_partition", "next_power_of_two", "table_family"]

"""Design contract: treatment cells, policies, assignment and outcome tables.

Cells are addressed by an integer index in ``[0, 2**K)`` whose bit ``k`` is
the level of factor ``k + 1`` (bit 0 is the least significant). Every
per-cell array in the engine uses this ordering.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

EPS_BOX = 1e-6
MAX_ENUM_K = 24


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class _FrozenArrays(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)


def frozen_array(value: Any, dtype: Any = np.float64) -> np.ndarray:
    """Copy ``value`` into a read-only ndarray of ``dtype``."""
    arr = np.array(value, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


class TreatmentCombo(_Frozen):
    """One of the ``2**K`` treatment cells."""

    bits: tuple[int, ...]

    @field_validator("bits")
    @classmethod
    def _binary(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(v) < 1:
            raise ValueError("a treatment combination needs K >= 1 factors")
        if any(b not in (0, 1) for b in v):
            raise ValueError(f"treatment bits must be 0/1, got {v}")
        return v

    @property
    def K(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return sum(b << k for k, b in enumerate(self.bits))

    @classmethod
    def from_index(cls, index: int, K: int) -> TreatmentCombo:
        if K < 1:
            raise ValueError("K must be >= 1")
        if not 0 <= index < (1 << K):
            raise ValueError(f"index {index} outside [0, 2**{K})")
        return cls(bits=tuple((index >> k) & 1 for k in range(K)))


class ThetaVector(_Frozen):
    """Policy parameter of the product-Bernoulli intervention model.

    Coordinates live in the clamped box ``[eps, 1 - eps]``; boundary optima
    land exactly on the clamp.
    """

    values: tuple[float, ...]
    eps: float = EPS_BOX

    @model_validator(mode="after")
    def _inside_box(self) -> ThetaVector:
        if not self.values:
            raise ValueError("theta must have at least one coordinate")
        if not 0 < self.eps < 0.5:
            raise ValueError("eps must be in (0, 0.5)")
        lo, hi = self.eps, 1.0 - self.eps
        for k, v in enumerate(self.values):
            if not math.isfinite(v) or v < lo or v > hi:
                raise ValueError(f"theta[{k}]={v} outside clamped box [{lo}, {hi}]")
        return self

    @property
    def K(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)

    @classmethod
    def clamped(cls, values: Sequence[float] | np.ndarray, eps: float = EPS_BOX) -> ThetaVector:
        arr = np.clip(np.asarray(values, dtype=np.float64), eps, 1.0 - eps)
        return cls(values=tuple(float(v) for v in arr), eps=eps)

    @classmethod
    def uniform(cls, K: int, eps: float = EPS_BOX) -> ThetaVector:
        return cls(values=(0.5,) * K, eps=eps)


AssignmentKind = Literal["uniform", "product"]


class AssignmentDist(_Frozen):
    """Known design distribution of ``T``: uniform over cells or product-Bernoulli."""

    kind: AssignmentKind = "uniform"
    K: int
    pi: tuple[float, ...] | None = None

    @model_validator(mode="after")
    def _positivity(self) -> AssignmentDist:
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.kind == "uniform":
            if self.pi is not None:
                raise ValueError("uniform assignment takes no pi")
            return self
        if self.pi is None or len(self.pi) != self.K:
            raise ValueError(f"product assignment needs pi of length K={self.K}")
        for k, p in enumerate(self.pi):
            if not 0.0 < p < 1.0:
                raise ValueError(f"positivity violated: pi[{k}]={p} must be in (0, 1)")
        return self

    def marginals(self) -> np.ndarray:
        """Per-factor ``P(T_k = 1)``."""
        if self.kind == "uniform":
            return np.full(self.K, 0.5)
        assert self.pi is not None
        return np.asarray(self.pi, dtype=np.float64)

    @classmethod
    def uniform(cls, K: int) -> AssignmentDist:
        return cls(kind="uniform", K=K)

    @classmethod
    def product(cls, pi: Sequence[float]) -> AssignmentDist:
        return cls(kind="product", K=len(pi), pi=tuple(float(p) for p in pi))


_BERNOULLI_CLIP = 1e-9


class PotentialOutcomeTable(_FrozenArrays):
    """Mean ``c_t`` and standard deviation ``sigma_t`` for every cell."""

    K: int
    c: np.ndarray
    sigma: np.ndarray
    family: Literal["bernoulli", "gaussian"] = "gaussian"

    @field_validator("c", "sigma", mode="before")
    @classmethod
    def _as_array(cls, v: Any) -> np.ndarray:
        return frozen_array(v)

    @model_validator(mode="after")
    def _covers_all_cells(self) -> PotentialOutcomeTable:
        if not 1 <= self.K <= MAX_ENUM_K:
            raise ValueError(f"K must be in [1, {MAX_ENUM_K}] for an enumerated table")
        m = 1 << self.K
        if self.c.shape != (m,) or self.sigma.shape != (m,):
            raise ValueError(f"table needs {m} entries for K={self.K}")
        if not np.all(np.isfinite(self.c)):
            raise ValueError("cell means must be finite")
        if np.any(self.sigma < 0) or not np.all(np.isfinite(self.sigma)):
            raise ValueError("cell standard deviations must be finite and >= 0")
        if self.family == "bernoulli":
            if np.any(self.c <= 0) or np.any(self.c >= 1):
                raise ValueError("bernoulli cell means must lie in (0, 1)")
            if not np.allclose(self.sigma**2, self.c * (1 - self.c), rtol=0, atol=1e-12):
                raise ValueError("bernoulli table requires sigma^2 = c(1 - c)")
        return self

    def mean(self, t: TreatmentCombo) -> float:
        return float(self.c[t.index])

    @classmethod
    def bernoulli(cls, c: Sequence[float] | np.ndarray) -> PotentialOutcomeTable:
        """Bernoulli outcomes; means are clipped into the open interval (0, 1)."""
        arr = np.asarray(c, dtype=np.float64)
        if np.any(arr < 0) or np.any(arr > 1):
            raise ValueError("bernoulli cell means must lie in [0, 1]")
        arr = np.clip(arr, _BERNOULLI_CLIP, 1 - _BERNOULLI_CLIP)
        K = _k_from_cells(arr.size)
        return cls(K=K, c=arr, sigma=np.sqrt(arr * (1 - arr)), family="bernoulli")

    @classmethod
    def gaussian(
        cls, c: Sequence[float] | np.ndarray, sigma: float | Sequence[float] | np.ndarray
    ) -> PotentialOutcomeTable:
        arr = np.asarray(c, dtype=np.float64)
        K = _k_from_cells(arr.size)
        sig = np.broadcast_to(np.asarray(sigma, dtype=np.float64), arr.shape)
        return cls(K=K, c=arr, sigma=sig, family="gaussian")


def _k_from_cells(m: int) -> int:
    K = m.bit_length() - 1
    if m < 2 or (1 << K) != m:
        raise ValueError(f"cell count {m} is not a power of two >= 2")
    return K


__all__ = [
    "EPS_BOX",
    "MAX_ENUM_K",
    "AssignmentDist",
    "AssignmentKind",
    "PotentialOutcomeTable",
    "ThetaVector",
    "TreatmentCombo",
    "frozen_array",
]

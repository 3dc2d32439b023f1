"""Pydantic models that validate config/experiment.yaml.

The loader uses ``yaml.safe_load`` so JSON documents are accepted as well.
CLI flags are applied on top of the loaded model with ``model_copy``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from contracts.design import EPS_BOX, AssignmentDist, PotentialOutcomeTable
from contracts.objective import ObjectiveSpec

OutcomeFamily = Literal["bernoulli", "gaussian"]
ReportFormat = Literal["human", "structured"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class OptimizerConfig(_Strict):
    starts: int = Field(default=16, ge=1)
    max_iters: int = Field(default=2000, ge=1)
    shrink: float = Field(default=0.5, gt=0.0, lt=1.0)
    slope: float = Field(default=1e-4, gt=0.0, lt=1.0)
    grad_tol: float = Field(default=1e-8, gt=0.0)
    max_step: float = Field(default=1.0, gt=0.0)
    # One [lo, hi] pair applied to every axis, or one pair per axis.
    box: list[tuple[float, float]] | None = None
    eps_box: float = Field(default=EPS_BOX, gt=0.0, lt=0.5)
    seed: int = 0
    n_jobs: int = 1

    @field_validator("box")
    @classmethod
    def _box_inside_unit(cls, v: list[tuple[float, float]] | None) -> list[tuple[float, float]] | None:
        if v is None:
            return v
        if not v:
            raise ValueError("optimizer.box must list at least one [lo, hi] pair")
        for lo, hi in v:
            if not 0.0 < lo < hi < 1.0:
                raise ValueError(f"optimizer.box pair [{lo}, {hi}] must satisfy 0 < lo < hi < 1")
        return v

    def bounds(self, K: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis ``(lo, hi)`` arrays of length ``K``."""
        if self.box is None:
            return np.full(K, self.eps_box), np.full(K, 1.0 - self.eps_box)
        pairs = self.box * K if len(self.box) == 1 else self.box
        if len(pairs) != K:
            raise ValueError(f"optimizer.box has {len(self.box)} pairs, expected 1 or K={K}")
        arr = np.asarray(pairs, dtype=np.float64)
        return arr[:, 0].copy(), arr[:, 1].copy()


class EMConfig(_Strict):
    max_iters: int = Field(default=500, ge=1)
    tol: float = Field(default=1e-8, gt=0.0)
    sigma_floor: float = Field(default=1e-4, gt=0.0)
    kmeans_iters: int = Field(default=100, ge=1)
    bernoulli_clip: float = Field(default=1e-6, gt=0.0, lt=0.5)
    seed: int = 0


class SimConfig(_Strict):
    K: int = Field(default=2, ge=1)
    n: int = Field(default=200, ge=1)
    assignment: Literal["uniform", "product"] = "uniform"
    pi: list[float] | None = None
    family: OutcomeFamily = "bernoulli"
    # Cell means indexed by cell index; None selects 0.2 + 0.6 * popcount(t) / K.
    c: list[float] | None = None
    sigma: float | list[float] = 1.0  # gaussian family only
    replicates: int = Field(default=1000, ge=1)

    @model_validator(mode="after")
    def _shapes(self) -> SimConfig:
        if self.c is not None and len(self.c) != 1 << self.K:
            raise ValueError(f"sim.c needs 2**K = {1 << self.K} entries, got {len(self.c)}")
        if self.assignment == "product" and (self.pi is None or len(self.pi) != self.K):
            raise ValueError("sim.pi must list K probabilities for product assignment")
        if isinstance(self.sigma, list) and len(self.sigma) != 1 << self.K:
            raise ValueError("sim.sigma list needs 2**K entries")
        return self

    def dist(self) -> AssignmentDist:
        if self.assignment == "product":
            assert self.pi is not None
            return AssignmentDist.product(self.pi)
        return AssignmentDist.uniform(self.K)

    def table(self) -> PotentialOutcomeTable:
        if self.c is None:
            popcount = np.array([bin(j).count("1") for j in range(1 << self.K)], dtype=np.float64)
            c = 0.2 + 0.6 * popcount / self.K
        else:
            c = np.asarray(self.c, dtype=np.float64)
        if self.family == "bernoulli":
            return PotentialOutcomeTable.bernoulli(c)
        return PotentialOutcomeTable.gaussian(c, self.sigma)


class SplitConfig(_Strict):
    fraction: float = Field(default=0.5, gt=0.0, lt=1.0)
    eval_estimator: Literal["ipw", "hajek", "adaptive", "mean_variance"] = "ipw"
    include_penalty: bool = True


class MixtureConfig(_Strict):
    k: int = Field(default=2, ge=1)
    family: OutcomeFamily = "gaussian"


class BasisConfig(_Strict):
    d: int = Field(default=1, ge=1)
    p: int = Field(default=256, ge=1)
    select_k: int = Field(default=3, ge=1)
    lam: float = Field(default=0.01, ge=0.0)
    draws: int = Field(default=1000, ge=1)
    strategy: Literal["iid", "deflate"] = "deflate"
    clamp_negative: bool = False
    # Planted regression model used by simulate/validate.
    n: int = Field(default=2000, ge=2)
    strong: list[int] = Field(default_factory=lambda: [17, 100, 201])
    beta: float = 3.0
    noise_sd: float = Field(default=0.1, ge=0.0)

    @model_validator(mode="after")
    def _planted_in_range(self) -> BasisConfig:
        for j in self.strong:
            if not 0 <= j < self.p:
                raise ValueError(f"basis.strong index {j} outside [0, {self.p})")
        return self


class HarnessConfig(_Strict):
    se_multiplier: float = Field(default=3.0, gt=0.0)
    batches: int = Field(default=20, ge=2)
    theta: list[float] | None = None
    # variance scaling
    k_grid: list[int] = Field(default_factory=lambda: [2, 4])
    variance_n_grid: list[int] = Field(default_factory=lambda: [250, 500, 1000, 2000])
    slope_tolerance: float = 0.15
    ratio_band: tuple[float, float] = (0.125, 8.0)
    # consistency
    n_grid: list[int] = Field(default_factory=lambda: [500, 2000, 8000])
    consistency_cap: float = 0.05
    # adaptive bias
    bias_n_grid: list[int] = Field(default_factory=lambda: [8, 32, 128])
    # clt
    coverage_target: float = 0.95
    coverage_tolerance: float = 0.015
    skew_max: float = 0.15
    # curse
    curse_ratio: float = 5.0
    curse_error_replicates: int = Field(default=20, ge=1)
    # mean-variance
    mv_slack: float = 0.005
    # rate radius
    lambda_grid: list[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    eta: float = Field(default=1e-3, gt=0.0)
    radius_resolution: float = Field(default=5e-4, gt=0.0, le=0.5)
    # split
    split_margin: float = 0.02
    # mixture / basis
    mixture_success: float = 0.9
    basis_success: float = 0.8
    basis_ustat_replicates: int = Field(default=200, ge=2)

    @field_validator("k_grid", "variance_n_grid", "n_grid", "bias_n_grid", "lambda_grid")
    @classmethod
    def _non_empty(cls, v: list[float]) -> list[float]:
        if not v:
            raise ValueError("grid must have at least one entry")
        return v


class RunConfig(_Strict):
    sim: SimConfig = Field(default_factory=SimConfig)
    objective: ObjectiveSpec = Field(default_factory=ObjectiveSpec)
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    em: EMConfig = Field(default_factory=EMConfig)
    split: SplitConfig = Field(default_factory=SplitConfig)
    mixture: MixtureConfig = Field(default_factory=MixtureConfig)
    basis: BasisConfig = Field(default_factory=BasisConfig)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    seed: int = 0
    data: str | None = None
    output: str | None = None
    format: ReportFormat = "human"

    @field_validator("data")
    @classmethod
    def _data_exists(cls, v: str | None) -> str | None:
        if v is not None and not Path(v).is_file():
            raise ValueError(f"data file not found: {v}")
        return v


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a YAML (or JSON) run configuration."""
    raw = Path(path).read_text(encoding="utf-8")
    data = yaml.safe_load(raw) or {}
    return RunConfig.model_validate(data)

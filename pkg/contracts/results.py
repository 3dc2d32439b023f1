"""Result contracts returned by the optimizer, splitter, mixture fit, basis
selection and the validation harness."""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from contracts.design import ThetaVector, frozen_array


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class OptimResult(_Frozen):
    theta_hat: ThetaVector
    value: float
    converged: bool
    iterations: int
    start_index: int
    all_start_values: tuple[float, ...]
    start_converged: tuple[bool, ...] = ()
    # Winning start: objective at the start point and after each accepted step.
    trace: tuple[float, ...] = ()

    @model_validator(mode="after")
    def _winner_listed(self) -> OptimResult:
        if not 0 <= self.start_index < len(self.all_start_values):
            raise ValueError("start_index must address one of all_start_values")
        return self

    @property
    def spread(self) -> float:
        """Gap between the best and worst start; large values flag several optima."""
        return max(self.all_start_values) - min(self.all_start_values)


class SplitResult(_Frozen):
    theta_1: ThetaVector
    q_hat: float
    n1: int = Field(ge=1)
    n2: int = Field(ge=1)
    seed: int
    fit_value: float
    estimator: str
    include_penalty: bool = True

    @property
    def n(self) -> int:
        return self.n1 + self.n2


class MixtureFit(BaseModel):
    """EM fit of a ``k``-component mixture over cell means or raw outcomes.

    ``labels`` is the argmax of ``responsibilities`` per value, so the
    labels always partition the inputs.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    family: Literal["gaussian", "bernoulli"]
    pi: tuple[float, ...]
    d: tuple[float, ...]
    sigma: tuple[float, ...]
    responsibilities: np.ndarray
    loglik: tuple[float, ...]
    labels: np.ndarray
    converged: bool
    iterations: int

    @field_validator("responsibilities", mode="before")
    @classmethod
    def _resp(cls, v: Any) -> np.ndarray:
        return frozen_array(v)

    @field_validator("labels", mode="before")
    @classmethod
    def _labels(cls, v: Any) -> np.ndarray:
        return frozen_array(v, np.int64)

    @model_validator(mode="after")
    def _consistent(self) -> MixtureFit:
        k = len(self.pi)
        if k < 1 or len(self.d) != k or len(self.sigma) != k:
            raise ValueError("pi, d and sigma must all have k >= 1 entries")
        if abs(sum(self.pi) - 1.0) > 1e-9:
            raise ValueError(f"mixing weights sum to {sum(self.pi)}, not 1")
        m = self.labels.shape[0]
        if self.responsibilities.shape != (m, k):
            raise ValueError("responsibilities must be (n_values, k)")
        if m and (self.labels.min() < 0 or self.labels.max() >= k):
            raise ValueError("labels must be component indices")
        return self

    @property
    def k(self) -> int:
        return len(self.pi)


class BitPolicy(_Frozen):
    """Policy over ``p = 2**l`` basis indices; coin 1 is the most significant bit."""

    theta: ThetaVector

    @property
    def l(self) -> int:  # noqa: E743
        return self.theta.K

    @property
    def p(self) -> int:
        return 1 << self.l


class BasisSelection(_Frozen):
    indices: tuple[int, ...]
    c_hat: tuple[float, ...]
    policy: BitPolicy
    p: int
    padded: int
    strategy: Literal["iid", "deflate"]
    value: float
    # Objective of each round's policy on the coefficients it was fitted to.
    round_values: tuple[float, ...] = ()


class ValidationReport(_Frozen):
    """Outcome of one Monte Carlo claim.

    ``passed`` holds exactly when ``|statistic - target| <= tolerance`` and
    every entry of ``checks`` holds. A degenerate run carries
    ``statistic = None`` and never passes.
    """

    claim: str
    statistic: float | None
    target: float
    se: float | None
    tolerance: float
    passed: bool = Field(serialization_alias="pass")
    seed: int
    runtime: float = 0.0
    checks: dict[str, bool] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)
    negative_control: bool = False

    @model_validator(mode="after")
    def _pass_rule(self) -> ValidationReport:
        if self.passed != self.evaluate(self.statistic, self.target, self.tolerance, self.checks):
            raise ValueError("passed must equal |statistic - target| <= tolerance and all checks")
        return self

    @staticmethod
    def evaluate(
        statistic: float | None, target: float, tolerance: float, checks: dict[str, bool]
    ) -> bool:
        if statistic is None or not math.isfinite(statistic):
            return False
        return abs(statistic - target) <= tolerance and all(checks.values())

    @classmethod
    def build(
        cls,
        *,
        claim: str,
        statistic: float | None,
        target: float,
        se: float | None,
        tolerance: float,
        seed: int,
        checks: dict[str, bool] | None = None,
        details: dict[str, Any] | None = None,
        negative_control: bool = False,
        runtime: float = 0.0,
    ) -> ValidationReport:
        checks = {k: bool(v) for k, v in (checks or {}).items()}
        if statistic is not None and not math.isfinite(statistic):
            statistic = None
        return cls(
            claim=claim,
            statistic=statistic,
            target=target,
            se=se if se is None or math.isfinite(se) else None,
            tolerance=tolerance,
            passed=cls.evaluate(statistic, target, tolerance, checks),
            seed=seed,
            runtime=runtime,
            checks=checks,
            details=details or {},
            negative_control=negative_control,
        )

    def record(self) -> dict[str, Any]:
        """JSON-ready dict; the keys ``claim statistic target se pass seed runtime`` are always present."""
        return self.model_dump(mode="json", by_alias=True)

    def result_hash(self) -> str:
        """sha256 over the record minus wall-clock runtime."""
        payload = self.record()
        payload.pop("runtime", None)
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


__all__ = [
    "BasisSelection",
    "BitPolicy",
    "MixtureFit",
    "OptimResult",
    "SplitResult",
    "ValidationReport",
]

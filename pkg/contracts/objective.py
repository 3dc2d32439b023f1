"""Objective contract: which estimator of Q to optimise and how to penalise it."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

EstimatorName = Literal["true_q", "adaptive", "ipw", "hajek", "mean_variance"]
VarianceVariant = Literal["plugin", "u1", "u2"]
PenaltyKind = Literal["entropy", "none"]


class ObjectiveSpec(BaseModel):
    """Selects an objective ``Q(theta)``.

    For ``mean_variance`` the weight ``lam`` multiplies the corrected
    variance term and no entropy is added; for every other estimator it
    multiplies the entropy penalty (when ``penalty == "entropy"``).
    """

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    estimator: EstimatorName = "ipw"
    variant: VarianceVariant = "plugin"
    lam: float = Field(default=0.1, ge=0.0, alias="lambda")
    penalty: PenaltyKind = "entropy"

    @property
    def entropy_weight(self) -> float:
        if self.estimator == "mean_variance" or self.penalty == "none":
            return 0.0
        return self.lam

    def label(self) -> str:
        if self.estimator == "mean_variance":
            return f"mean_variance[{self.variant}]"
        return self.estimator


__all__ = ["EstimatorName", "ObjectiveSpec", "PenaltyKind", "VarianceVariant"]

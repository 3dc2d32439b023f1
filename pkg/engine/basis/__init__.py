"""Basis selection by U-statistic coefficients and bit-encoded sampling policies."""

from __future__ import annotations

from engine.basis.family import BasisFamily, indicator_partition, next_power_of_two, table_family
from engine.basis.policy import (
    alpha_from_theta,
    optimize_policy,
    policy_value,
    sample_bases,
    select_bases,
)
from engine.basis.ustat import planted_coefficients, u_stat_coefficients

__all__ = [
    "BasisFamily",
    "alpha_from_theta",
    "indicator_partition",
    "next_power_of_two",
    "optimize_policy",
    "planted_coefficients",
    "policy_value",
    "sample_bases",
    "select_bases",
    "table_family",
    "u_stat_coefficients",
]

"""Sample-splitting inference for the optimal policy value."""

from __future__ import annotations

from engine.inference.splitting import fit_policy, split_estimate, split_indices

__all__ = ["fit_policy", "split_estimate", "split_indices"]

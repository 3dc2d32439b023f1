"""Clustering of cell means and the top-cluster policy for large ``K``."""

from __future__ import annotations

from engine.mixture.em import fit_mixture, kmeans_pp
from engine.mixture.policy import cell_mean_values, fit_outcome_mixture, top_cluster_policy

__all__ = ["cell_mean_values", "fit_mixture", "fit_outcome_mixture", "kmeans_pp", "top_cluster_policy"]

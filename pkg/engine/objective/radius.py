"""Separation radius of the true objective around its maximiser.

``radius = max ||theta - theta*||_2`` over grid points with
``|Q(theta) - Q(theta*)| <= eta``: the smallest ball outside of which the
objective has dropped by more than ``eta``, resolved to the grid spacing.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.special import entr

from config.schema import OptimizerConfig
from contracts.design import PotentialOutcomeTable
from engine.errors import ConfigurationError, UndefinedRadiusError
from engine.objective.factory import linear_objective
from engine.objective.functions import q_true
from engine.optimizer.ascent import maximize

LOG = logging.getLogger("factorial.objective")

MAX_RADIUS_K = 10
_CHUNK = 1 << 16


def _grid_values(table: PotentialOutcomeTable, lam: float, points: np.ndarray) -> np.ndarray:
    p = np.ones((points.shape[0], 1))
    for k in range(points.shape[1]):
        q = points[:, k : k + 1]
        p = np.concatenate((p * (1.0 - q), p * q), axis=1)
    values = p @ table.c
    if lam:
        values = values + lam * (entr(points) + entr(1.0 - points)).sum(axis=1)
    return values


def separation_radius(
    table: PotentialOutcomeTable,
    lam: float,
    eta: float,
    *,
    resolution: float = 1.0 / 200.0,
    config: OptimizerConfig | None = None,
    max_points: int = 4_000_000,
) -> float:
    K = table.K
    if K > MAX_RADIUS_K:
        raise ConfigurationError(f"separation_radius scans a grid; K={K} exceeds {MAX_RADIUS_K}")
    if eta <= 0:
        raise ConfigurationError("eta must be > 0")
    if not 0 < resolution <= 0.5:
        raise ConfigurationError("resolution must be in (0, 0.5]")
    cfg = config or OptimizerConfig()
    steps = round(1.0 / resolution)
    if (steps + 1) ** K > max_points:
        raise ConfigurationError(
            f"grid of {(steps + 1) ** K} points exceeds max_points={max_points}; coarsen resolution"
        )

    best = maximize(linear_objective(table.c, lam), cfg, K=K)
    theta_star = best.theta_hat.as_array()
    q_star = q_true(table, theta_star, lam)

    axis = np.linspace(cfg.eps_box, 1.0 - cfg.eps_box, steps + 1)
    mesh = np.stack(np.meshgrid(*([axis] * K), indexing="ij"), axis=-1).reshape(-1, K)
    lo, hi, radius = np.inf, -np.inf, 0.0
    for start in range(0, mesh.shape[0], _CHUNK):
        pts = mesh[start : start + _CHUNK]
        vals = _grid_values(table, lam, pts)
        lo = min(lo, float(vals.min()))
        hi = max(hi, float(vals.max()))
        near = np.abs(vals - q_star) <= eta
        if near.any():
            dist = np.linalg.norm(pts[near] - theta_star, axis=1)
            radius = max(radius, float(dist.max()))
    if eta > hi - lo:
        raise UndefinedRadiusError(
            f"eta={eta} exceeds the objective's range {hi - lo:.6g} over the box; radius undefined"
        )
    LOG.debug("separation_radius lam=%g eta=%g -> %.6g (theta*=%s)", lam, eta, radius, theta_star)
    return radius


def implied_eta(K: int, n: int) -> float:
    """Threshold ``sqrt(|T| log |T| / n)`` below which ``eta`` is too fine for ``n`` rows."""
    cells = float(1 << K)
    return float(np.sqrt(cells * np.log(cells) / n))


__all__ = ["MAX_RADIUS_K", "implied_eta", "separation_radius"]

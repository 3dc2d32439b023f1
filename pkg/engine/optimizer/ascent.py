"""Projected multi-start gradient ascent over an axis-aligned box.

Each start climbs with backtracking (Armijo) steps projected onto the box by
coordinate clipping. The first start is the all-0.5 point clipped into the
box; the rest come from a scrambled Halton sequence seeded by
``config.seed``. The winner is the highest final value, ties going to the
lowest start index.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import qmc

from config.schema import OptimizerConfig
from contracts.design import ThetaVector
from contracts.results import OptimResult
from engine.errors import ConfigurationError, NonFiniteObjectiveError

LOG = logging.getLogger("factorial.optimizer")

Objective = Callable[[np.ndarray], tuple[float, np.ndarray]]

_MIN_STEP = 1e-20


@dataclass(frozen=True)
class _Climb:
    theta: np.ndarray
    value: float
    converged: bool
    iterations: int
    trace: tuple[float, ...]


def _evaluate(objective: Objective, theta: np.ndarray) -> tuple[float, np.ndarray]:
    value, grad = objective(theta)
    value = float(value)
    grad = np.asarray(grad, dtype=np.float64)
    if not math.isfinite(value) or not np.all(np.isfinite(grad)):
        raise NonFiniteObjectiveError(f"objective is not finite at theta={theta.tolist()}")
    return value, grad


def _climb(
    objective: Objective, x0: np.ndarray, lo: np.ndarray, hi: np.ndarray, cfg: OptimizerConfig
) -> _Climb:
    theta = np.clip(x0, lo, hi)
    value, grad = _evaluate(objective, theta)
    trace = [value]
    last_step = cfg.max_step / 2.0
    for it in range(1, cfg.max_iters + 1):
        if np.max(np.abs(np.clip(theta + grad, lo, hi) - theta)) <= cfg.grad_tol:
            return _Climb(theta, value, True, it - 1, tuple(trace))
        step = min(2.0 * last_step, cfg.max_step)
        while True:
            candidate = np.clip(theta + step * grad, lo, hi)
            move = candidate - theta
            new_value, new_grad = _evaluate(objective, candidate)
            if new_value >= value + cfg.slope * float(grad @ move):
                break
            step *= cfg.shrink
            if step < _MIN_STEP:
                # No ascent direction left at floating-point resolution.
                return _Climb(theta, value, True, it, tuple(trace))
        theta, value, grad = candidate, new_value, new_grad
        trace.append(value)
        last_step = step
    LOG.debug("start did not converge in %d iterations (value=%.10g)", cfg.max_iters, value)
    return _Climb(theta, value, False, cfg.max_iters, tuple(trace))


def start_points(K: int, lo: np.ndarray, hi: np.ndarray, cfg: OptimizerConfig) -> np.ndarray:
    """``(starts, K)`` initial points; row 0 is all-0.5 clipped into the box."""
    first = np.clip(np.full(K, 0.5), lo, hi)[None, :]
    if cfg.starts == 1:
        return first
    rng = np.random.default_rng(cfg.seed)
    halton = qmc.Halton(d=K, scramble=True, seed=rng)
    rest = lo + halton.random(cfg.starts - 1) * (hi - lo)
    return np.vstack((first, rest))


def maximize(
    objective: Objective,
    config: OptimizerConfig,
    *,
    K: int,
    box: list[tuple[float, float]] | None = None,
) -> OptimResult:
    """Maximise ``objective`` over the box; deterministic given ``config.seed``.

    ``box`` overrides ``config.box`` (e.g. the output of ``highdim_box``).
    """
    cfg = config if box is None else config.model_copy(update={"box": box})
    try:
        lo, hi = cfg.bounds(K)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    if np.any(lo < cfg.eps_box) or np.any(hi > 1.0 - cfg.eps_box):
        lo = np.maximum(lo, cfg.eps_box)
        hi = np.minimum(hi, 1.0 - cfg.eps_box)
    if np.any(lo >= hi):
        raise ConfigurationError("optimizer box must satisfy lo < hi on every axis")

    starts = start_points(K, lo, hi, cfg)
    if cfg.n_jobs == 1:
        climbs = [_climb(objective, x0, lo, hi, cfg) for x0 in starts]
    else:
        climbs = Parallel(n_jobs=cfg.n_jobs, prefer="threads")(
            delayed(_climb)(objective, x0, lo, hi, cfg) for x0 in starts
        )
    values = np.array([c.value for c in climbs])
    winner = int(np.argmax(values))
    best = climbs[winner]
    LOG.debug(
        "maximize K=%d starts=%d winner=%d value=%.10g spread=%.3g",
        K,
        len(climbs),
        winner,
        best.value,
        float(values.max() - values.min()),
    )
    return OptimResult(
        theta_hat=ThetaVector(values=tuple(float(v) for v in best.theta), eps=cfg.eps_box),
        value=best.value,
        converged=best.converged,
        iterations=best.iterations,
        start_index=winner,
        all_start_values=tuple(float(v) for v in values),
        start_converged=tuple(c.converged for c in climbs),
        trace=best.trace,
    )


__all__ = ["Objective", "maximize", "start_points"]

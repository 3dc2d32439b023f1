"""One-dimensional mixture fitting: k-means++ seeding, Lloyd refinement, then EM.

``gaussian`` mixes normals over real values (typically cell means);
``bernoulli`` mixes Bernoulli components over values in [0, 1].
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Literal

import numpy as np
from scipy.special import logsumexp, xlog1py, xlogy
from scipy.stats import norm

from config.schema import EMConfig
from contracts.results import MixtureFit
from engine.errors import ConfigurationError

LOG = logging.getLogger("factorial.mixture")

Family = Literal["gaussian", "bernoulli"]


def kmeans_pp(values: np.ndarray, k: int, rng: np.random.Generator, iters: int) -> np.ndarray:
    """k-means++ seeds refined by Lloyd iterations; returns ``k`` centres."""
    m = values.size
    centres = np.empty(k)
    centres[0] = values[rng.integers(m)]
    for j in range(1, k):
        d2 = np.min((values[:, None] - centres[None, :j]) ** 2, axis=1)
        total = d2.sum()
        pick = rng.integers(m) if total <= 0 else rng.choice(m, p=d2 / total)
        centres[j] = values[pick]
    for _ in range(iters):
        labels = np.argmin(np.abs(values[:, None] - centres[None, :]), axis=1)
        updated = centres.copy()
        for j in range(k):
            members = values[labels == j]
            if members.size:
                updated[j] = members.mean()
        if np.array_equal(updated, centres):
            break
        centres = updated
    return centres


def _component_logpdf(
    x: np.ndarray, d: np.ndarray, sigma: np.ndarray, family: Family
) -> np.ndarray:
    if family == "gaussian":
        return norm.logpdf(x[:, None], loc=d[None, :], scale=sigma[None, :])
    return xlogy(x[:, None], d[None, :]) + xlog1py(1.0 - x[:, None], -d[None, :])


def fit_mixture(
    values: Sequence[float] | np.ndarray,
    k: int,
    family: Family = "gaussian",
    config: EMConfig | None = None,
    *,
    seed: int | None = None,
) -> MixtureFit:
    cfg = config or EMConfig()
    x = np.asarray(values, dtype=np.float64).reshape(-1)
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if x.size == 0:
        raise ConfigurationError("cannot fit a mixture to zero values")
    if not np.all(np.isfinite(x)):
        raise ConfigurationError("mixture values must be finite")
    if family == "bernoulli" and (np.any(x < 0) or np.any(x > 1)):
        raise ConfigurationError("bernoulli mixture needs values in [0, 1]")
    if k > np.unique(x).size:
        LOG.warning("fit_mixture: k=%d exceeds %d distinct values", k, np.unique(x).size)

    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    d = kmeans_pp(x, k, rng, cfg.kmeans_iters)
    pi = np.full(k, 1.0 / k)
    if family == "gaussian":
        sigma = np.full(k, max(float(x.std()), cfg.sigma_floor))
    else:
        d = np.clip(d, cfg.bernoulli_clip, 1.0 - cfg.bernoulli_clip)
        sigma = np.sqrt(d * (1.0 - d))

    trace: list[float] = []
    converged = False
    iterations = 0
    resp = np.full((x.size, k), 1.0 / k)
    for iterations in range(1, cfg.max_iters + 1):
        with np.errstate(divide="ignore"):
            log_joint = np.log(pi)[None, :] + _component_logpdf(x, d, sigma, family)
        norm_const = logsumexp(log_joint, axis=1)
        loglik = float(norm_const.sum())
        resp = np.exp(log_joint - norm_const[:, None])
        if trace and loglik < trace[-1] - 1e-10 * max(1.0, abs(trace[-1])):
            LOG.warning("EM log-likelihood decreased: %.12g -> %.12g", trace[-1], loglik)
        if trace and abs(loglik - trace[-1]) < cfg.tol:
            trace.append(loglik)
            converged = True
            break
        trace.append(loglik)

        weight = resp.sum(axis=0)
        pi = weight / x.size
        alive = weight > 0
        d = np.where(alive, (resp * x[:, None]).sum(axis=0) / np.where(alive, weight, 1.0), d)
        if family == "gaussian":
            spread = (resp * (x[:, None] - d[None, :]) ** 2).sum(axis=0) / np.where(alive, weight, 1.0)
            sigma = np.where(alive, np.maximum(np.sqrt(spread), cfg.sigma_floor), sigma)
        else:
            d = np.clip(d, cfg.bernoulli_clip, 1.0 - cfg.bernoulli_clip)
            sigma = np.sqrt(d * (1.0 - d))
        LOG.debug("EM iter %d loglik=%.12g", iterations, loglik)

    if family == "gaussian" and np.any(sigma <= cfg.sigma_floor):
        LOG.warning("fit_mixture: sigma floor %.1e active on %d component(s)", cfg.sigma_floor, int(np.sum(sigma <= cfg.sigma_floor)))
    labels = np.argmax(resp, axis=1)
    pi = pi / pi.sum()
    return MixtureFit(
        family=family,
        pi=tuple(float(v) for v in pi),
        d=tuple(float(v) for v in d),
        sigma=tuple(float(v) for v in sigma),
        responsibilities=resp,
        loglik=tuple(trace),
        labels=labels,
        converged=converged,
        iterations=iterations,
    )


__all__ = ["Family", "fit_mixture", "kmeans_pp"]

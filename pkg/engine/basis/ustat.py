"""Unbiased pairwise estimates of squared basis coefficients ``|<b, phi_q>|^2``."""

from __future__ import annotations

import numpy as np

from contracts.data import RegressionSample
from engine.basis.family import BasisFamily
from engine.errors import DimensionMismatchError, InsufficientSampleError


def u_stat_coefficients(
    sample: RegressionSample, family: BasisFamily, *, clamp_negative: bool = False
) -> np.ndarray:
    """``c_hat_q = (S_q^2 - T_q) / (n (n - 1))`` with ``a_iq = Y_i phi_q(X_i)``,
    ``S_q = sum_i a_iq`` and ``T_q = sum_i a_iq^2``.

    Estimates may be negative; ``clamp_negative`` floors them at 0.
    """
    if sample.n < 2:
        raise InsufficientSampleError(f"U-statistic needs n >= 2, got n={sample.n}")
    if sample.d != family.d:
        raise DimensionMismatchError(f"sample has d={sample.d}, family has d={family.d}")
    a = sample.y[:, None] * family.design_matrix(sample.x)
    s = a.sum(axis=0)
    t = (a * a).sum(axis=0)
    c_hat = (s * s - t) / (sample.n * (sample.n - 1))
    return np.maximum(c_hat, 0.0) if clamp_negative else c_hat


def planted_coefficients(p: int, strong: dict[int, float]) -> np.ndarray:
    """Exact ``c_q = beta_q^2`` for ``b = sum_q beta_q phi_q`` over an orthonormal family."""
    c = np.zeros(p)
    for q, beta in strong.items():
        c[q] = beta * beta
    return c


__all__ = ["planted_coefficients", "u_stat_coefficients"]

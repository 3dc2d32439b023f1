"""High-dimensional box restriction ``[1 - nu, nu]^K``.

``nu`` is the largest value with ``(2**K / n) * nu**K <= C``, capped at
``1 - eps``; the policy may then not concentrate on cells that are too
rarely observed for ``n`` rows.
"""

from __future__ import annotations

import logging
import math

from contracts.design import EPS_BOX
from engine.errors import ConfigurationError, InfeasibleBoxError

LOG = logging.getLogger("factorial.optimizer")

_NU_FLOOR = 0.5 + 1e-9


def highdim_nu(K: int, n: int, C: float, eps: float = EPS_BOX) -> float:
    if C <= 0:
        raise ConfigurationError("C must be > 0")
    if K < 1 or n < 1:
        raise ConfigurationError("K and n must be >= 1")
    nu = math.exp((math.log(C) + math.log(n) - K * math.log(2.0)) / K)
    if nu <= _NU_FLOOR:
        raise InfeasibleBoxError(
            f"box [1 - nu, nu] has an empty interior: nu={nu:.9g} <= 0.5 for K={K}, n={n}, C={C}; "
            "increase C or n"
        )
    return min(nu, 1.0 - eps)


def highdim_box(K: int, n: int, C: float, eps: float = EPS_BOX) -> list[tuple[float, float]]:
    """Per-axis ``[lo, hi]`` pairs for ``OptimizerConfig.box``."""
    nu = highdim_nu(K, n, C, eps)
    lo = max(1.0 - nu, eps)
    LOG.debug("highdim_box K=%d n=%d C=%g -> nu=%.9g", K, n, C, nu)
    return [(lo, nu)] * K


__all__ = ["highdim_box", "highdim_nu"]

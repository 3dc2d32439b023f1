"""Objective functions ``Q(theta)``, their analytic gradients and the
separation-radius diagnostic.

Use ``engine.objective.factory.make_objective`` to obtain the
value-and-gradient closure the optimizer consumes.
"""

from __future__ import annotations

from engine.objective.factory import (
    Objective,
    ObjectiveInputs,
    grad_q,
    linear_objective,
    make_objective,
    value_q,
)
from engine.objective.functions import (
    q_adaptive,
    q_hajek,
    q_ipw,
    q_ipw_cells,
    q_mean_variance,
    q_true,
)
from engine.objective.gradient import finite_difference_gradient
from engine.objective.radius import implied_eta, separation_radius

__all__ = [
    "Objective",
    "ObjectiveInputs",
    "finite_difference_gradient",
    "grad_q",
    "implied_eta",
    "linear_objective",
    "make_objective",
    "q_adaptive",
    "q_hajek",
    "q_ipw",
    "q_ipw_cells",
    "q_mean_variance",
    "q_true",
    "separation_radius",
    "value_q",
]

"""Treatment cells, the product-Bernoulli policy and its entropy penalty.

Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

from engine.design.combos import all_combos, bits_to_index, combo_bits, n_cells, popcount
from engine.design.policy import (
    assignment_prob,
    assignment_probabilities,
    cell_probabilities,
    entropy,
    entropy_gradient,
    linear_value_and_grad,
    prob_of_combo,
    score_sum,
    theta_array,
)

__all__ = [
    "all_combos",
    "assignment_prob",
    "assignment_probabilities",
    "bits_to_index",
    "cell_probabilities",
    "combo_bits",
    "entropy",
    "entropy_gradient",
    "linear_value_and_grad",
    "n_cells",
    "popcount",
    "prob_of_combo",
    "score_sum",
    "theta_array",
]

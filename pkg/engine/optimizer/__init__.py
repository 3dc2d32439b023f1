"""Box-constrained maximisation of policy objectives."""

from __future__ import annotations

from engine.optimizer.ascent import maximize, start_points
from engine.optimizer.box import highdim_box, highdim_nu

__all__ = ["highdim_box", "highdim_nu", "maximize", "start_points"]

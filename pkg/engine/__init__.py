"""Numerical core: designs, estimators, objectives, optimizer, inference, mixture and basis selection."""

from __future__ import annotations

"""Report rendering and dataset CSV I/O."""

from __future__ import annotations

from services.reports.io import read_dataset, read_regression, write_dataset, write_regression
from services.reports.reports import config_hash, emit, envelope, render

__all__ = [
    "config_hash",
    "emit",
    "envelope",
    "read_dataset",
    "read_regression",
    "render",
    "write_dataset",
    "write_regression",
]

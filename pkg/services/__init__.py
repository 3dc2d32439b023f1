"""Service-layer packages: simulation harness, reports and the CLI."""

from __future__ import annotations

"""Exception hierarchy for the factorial-intervention engine.

Two families matter to callers: configuration/data problems (the input is
wrong, fix it and rerun) and numerical failures (the input was accepted but
the computation broke down). The CLI maps them to different exit codes.
"""

from __future__ import annotations


class FactorialError(Exception):
    """Base class for every engine error."""


class ConfigurationError(FactorialError):
    """The caller supplied inputs that violate a precondition."""


class NumericalError(FactorialError):
    """A computation produced a non-finite or degenerate value."""


class DimensionMismatchError(ConfigurationError):
    """Two objects that must share a factor count ``K`` do not."""


class BoundaryError(ConfigurationError):
    """A policy coordinate sits outside the clamped box ``[eps, 1 - eps]``."""


class PositivityError(ConfigurationError):
    """Some treatment combination has zero assignment probability."""


class InsufficientSampleError(ConfigurationError):
    """Too few rows for the requested estimator (e.g. U-statistics need n >= 2)."""


class InfeasibleBoxError(ConfigurationError):
    """The requested high-dimensional box has an empty interior."""


class UndefinedRadiusError(ConfigurationError):
    """``eta`` exceeds the objective's total range, so no radius exists."""


class EmptyFoldError(ConfigurationError):
    """A sample-splitting fold would contain no rows."""


class DatasetFormatError(ConfigurationError):
    """A dataset file row could not be parsed.

    ``line`` is the 1-based line number in the file (header is line 1).
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class DegenerateWeightsError(NumericalError):
    """Importance weights sum to zero or are not finite."""


class NonFiniteObjectiveError(NumericalError):
    """An objective evaluation returned NaN or infinity."""


__all__ = [
    "BoundaryError",
    "ConfigurationError",
    "DatasetFormatError",
    "DegenerateWeightsError",
    "DimensionMismatchError",
    "EmptyFoldError",
    "FactorialError",
    "InfeasibleBoxError",
    "InsufficientSampleError",
    "NonFiniteObjectiveError",
    "NumericalError",
    "PositivityError",
    "UndefinedRadiusError",
]

"""Dataset CSV I/O.

Factorial datasets use the header ``t1,...,tK,y``: one unit per row,
treatments strictly ``0``/``1``, outcomes finite decimals. Regression
samples use ``x1,...,xd,y``. Line numbers in errors count the header as
line 1.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path
from typing import TextIO

import numpy as np
import pandas as pd

from contracts.data import FactorialDataset, RegressionSample
from contracts.design import AssignmentDist
from engine.errors import DatasetFormatError, DimensionMismatchError

Target = str | Path | TextIO | None


def _read_frame(path: str | Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise DatasetFormatError("file is empty", 1) from exc
    except pd.errors.ParserError as exc:
        raise DatasetFormatError(str(exc)) from exc


def _header(df: pd.DataFrame, prefix: str) -> int:
    cols = [str(c).strip() for c in df.columns]
    if len(cols) < 2 or cols[-1] != "y":
        raise DatasetFormatError(f"header must be {prefix}1,...,y; got {','.join(cols)}", 1)
    expected = [f"{prefix}{k + 1}" for k in range(len(cols) - 1)]
    if cols[:-1] != expected:
        raise DatasetFormatError(f"header must be {','.join(expected)},y; got {','.join(cols)}", 1)
    if df.empty:
        raise DatasetFormatError("no data rows", 2)
    return len(expected)


def _to_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        return math.nan


def _outcomes(column: pd.Series) -> np.ndarray:
    # float() rather than pd.to_numeric: exact round trip of written values
    y = column.str.strip().map(_to_float).to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(y))
    if bad.size:
        row = int(bad[0])
        raise DatasetFormatError(f"outcome {column.iloc[row]!r} is not a finite number", row + 2)
    return y


def read_dataset(path: str | Path, dist: AssignmentDist | None = None) -> FactorialDataset:
    """Parse a factorial dataset; ``dist`` defaults to uniform assignment over the header's K."""
    df = _read_frame(path)
    K = _header(df, "t")
    raw = df.iloc[:, :K].apply(lambda s: s.str.strip()).to_numpy(dtype=str)
    bad_rows = np.flatnonzero(~np.isin(raw, ("0", "1")).all(axis=1))
    if bad_rows.size:
        row = int(bad_rows[0])
        raise DatasetFormatError(f"treatments must be 0/1, got {','.join(raw[row])}", row + 2)
    y = _outcomes(df.iloc[:, K])
    design = dist if dist is not None else AssignmentDist.uniform(K)
    if design.K != K:
        raise DimensionMismatchError(f"assignment is for K={design.K}, file has K={K}")
    return FactorialDataset(treatments=raw.astype(np.uint8), y=y, dist=design)


def read_regression(path: str | Path) -> RegressionSample:
    df = _read_frame(path)
    d = _header(df, "x")
    x = np.column_stack([_outcomes(df.iloc[:, j]) for j in range(d)])
    outside = np.flatnonzero(((x < 0) | (x > 1)).any(axis=1))
    if outside.size:
        raise DatasetFormatError("covariates must lie in [0, 1]", int(outside[0]) + 2)
    return RegressionSample(x=x, y=_outcomes(df.iloc[:, d]))


def _write_frame(df: pd.DataFrame, target: Target) -> None:
    if isinstance(target, (str, Path)):
        Path(target).parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(sys.stdout if target is None else target, index=False, lineterminator="\n")


def dataset_frame(data: FactorialDataset) -> pd.DataFrame:
    df = pd.DataFrame(data.treatments.astype(np.int64), columns=[f"t{k + 1}" for k in range(data.K)])
    df["y"] = data.y
    return df


def write_dataset(data: FactorialDataset, target: Target = None) -> None:
    """Write ``data`` as CSV to a path, an open stream, or stdout when ``target`` is None.

    Outcomes are written with round-trip float formatting so a re-read
    dataset is bit-identical.
    """
    _write_frame(dataset_frame(data), target)


def write_regression(sample: RegressionSample, target: Target = None) -> None:
    df = pd.DataFrame(sample.x, columns=[f"x{j + 1}" for j in range(sample.d)])
    df["y"] = sample.y
    _write_frame(df, target)


__all__ = [
    "dataset_frame",
    "read_dataset",
    "read_regression",
    "write_dataset",
    "write_regression",
]

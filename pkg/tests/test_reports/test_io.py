"""Tests for dataset CSV I/O."""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
import pytest
from config.schema import SimConfig
from contracts.data import RegressionSample
from contracts.design import AssignmentDist
from engine.errors import DatasetFormatError, DimensionMismatchError
from services.harness.simulate import generate
from services.reports.io import (
    dataset_frame,
    read_dataset,
    read_regression,
    write_dataset,
    write_regression,
)


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "data.csv"
    path.write_text(text, encoding="utf-8")
    return path


def test_dataset_survives_write_and_read(tmp_path: Path) -> None:
    data = generate(SimConfig(K=3, n=40, family="gaussian"), 0, master_seed=2)
    path = tmp_path / "nested" / "data.csv"
    write_dataset(data, path)
    back = read_dataset(path)
    assert np.array_equal(back.treatments, data.treatments)
    assert np.array_equal(back.y, data.y)
    assert back.dist == AssignmentDist.uniform(3)


def test_write_to_stream_has_header() -> None:
    data = generate(SimConfig(K=2, n=3), 0)
    buf = io.StringIO()
    write_dataset(data, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t1,t2,y"
    assert len(lines) == 4


def test_write_defaults_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    write_dataset(generate(SimConfig(K=1, n=2), 0))
    assert capsys.readouterr().out.startswith("t1,y\n")


def test_dataset_frame_columns() -> None:
    frame = dataset_frame(generate(SimConfig(K=2, n=5), 0))
    assert list(frame.columns) == ["t1", "t2", "y"]


def test_reads_three_row_fixture(tmp_path: Path) -> None:
    data = read_dataset(_write(tmp_path, "t1,t2,y\n0,0,1.0\n1,0,0.5\n1,1,2\n"))
    assert data.cell_index.tolist() == [0, 1, 3]
    assert data.y.tolist() == [1.0, 0.5, 2.0]


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("", 1),
        ("a,b,y\n0,0,1\n", 1),
        ("t1,t2,z\n0,0,1\n", 1),
        ("t1,t2,y\n", 2),
        ("t1,t2,y\n0,0,1\n0,2,1\n", 3),
        ("t1,t2,y\n0,0,1\n1,1,abc\n", 3),
        ("t1,t2,y\n0,0,nan\n", 2),
    ],
)
def test_malformed_rows_report_line(tmp_path: Path, text: str, line: int) -> None:
    with pytest.raises(DatasetFormatError) as info:
        read_dataset(_write(tmp_path, text))
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_assignment_must_match_header(tmp_path: Path) -> None:
    with pytest.raises(DimensionMismatchError):
        read_dataset(_write(tmp_path, "t1,t2,y\n0,0,1\n"), AssignmentDist.uniform(3))


def test_product_assignment_is_kept(tmp_path: Path) -> None:
    dist = AssignmentDist.product([0.3, 0.6])
    assert read_dataset(_write(tmp_path, "t1,t2,y\n0,1,1\n"), dist).dist == dist


def test_regression_round_trip(tmp_path: Path) -> None:
    rng = np.random.default_rng(0)
    sample = RegressionSample(x=rng.random((10, 2)), y=rng.normal(size=10))
    path = tmp_path / "reg.csv"
    write_regression(sample, path)
    back = read_regression(path)
    assert np.array_equal(back.x, sample.x)
    assert np.array_equal(back.y, sample.y)


def test_regression_covariates_in_unit_cube(tmp_path: Path) -> None:
    with pytest.raises(DatasetFormatError) as info:
        read_regression(_write(tmp_path, "x1,y\n0.5,1\n1.5,2\n"))
    assert info.value.line == 3

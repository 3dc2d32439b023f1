"""Tests for the command-line entry point."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest
from engine.errors import DegenerateWeightsError
from services.cli import main as cli
from services.cli.main import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, resolve_config, run


def _report(path: Path) -> dict[str, Any]:
    return json.loads(path.read_text(encoding="utf-8"))


def test_missing_command_is_a_usage_error() -> None:
    assert run([]) == EXIT_CONFIG


def test_unknown_claim_is_a_usage_error() -> None:
    assert run(["validate", "no-such-claim"]) == EXIT_CONFIG


def test_estimate_without_data() -> None:
    assert run(["estimate"]) == EXIT_CONFIG


def test_missing_data_file(tmp_path: Path) -> None:
    assert run(["estimate", "--data", str(tmp_path / "absent.csv")]) == EXIT_CONFIG


def test_malformed_data_file(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("t1,y\n3,1\n", encoding="utf-8")
    assert run(["estimate", "--data", str(path)]) == EXIT_CONFIG


def test_invalid_config_file(tmp_path: Path) -> None:
    path = tmp_path / "cfg.yaml"
    path.write_text("sim:\n  K: 0\n", encoding="utf-8")
    assert run(["simulate", "--config", str(path)]) == EXIT_CONFIG


def test_numerical_failure_exit_code(monkeypatch: pytest.MonkeyPatch) -> None:
    def boom(*_: Any) -> None:
        raise DegenerateWeightsError("weights sum to zero")

    monkeypatch.setitem(cli.COMMANDS, "estimate", boom)
    assert run(["estimate"]) == EXIT_NUMERICAL


def test_simulate_then_estimate(tmp_path: Path) -> None:
    data = tmp_path / "data.csv"
    out = tmp_path / "summary.json"
    assert run(["simulate", "--K", "2", "--n", "50", "--seed", "3", "--out", str(data)]) == EXIT_OK
    assert data.read_text(encoding="utf-8").startswith("t1,t2,y\n")
    assert run(["estimate", "--data", str(data), "--format", "structured", "--out", str(out)]) == EXIT_OK
    report = _report(out)
    assert report["command"] == "estimate"
    assert (report["K"], report["n"]) == (2, 50)
    assert sum(report["n_t"]) == 50


def test_simulate_is_reproducible(tmp_path: Path) -> None:
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["simulate", "--K", "3", "--n", "20", "--seed", "5", "--out", str(a)])
    run(["simulate", "--K", "3", "--n", "20", "--seed", "5", "--out", str(b)])
    assert a.read_text(encoding="utf-8") == b.read_text(encoding="utf-8")


def test_estimate_three_row_fixture(tmp_path: Path) -> None:
    data = tmp_path / "fixture.csv"
    data.write_text("t1,t2,y\n0,0,1.0\n1,0,0.5\n1,1,2\n", encoding="utf-8")
    out = tmp_path / "r.json"
    assert run(["estimate", "--data", str(data), "--format", "structured", "--out", str(out)]) == EXIT_OK
    report = _report(out)
    assert report["n_t"] == [1, 1, 0, 1]
    assert report["c_hat"] == [1.0, 0.5, 0.0, 2.0]
    assert report["empty"] == [False, False, True, False]


def test_optimize_true_objective(tmp_path: Path) -> None:
    out = tmp_path / "opt.json"
    argv = ["optimize", "--K", "1", "--estimator", "true_q", "--lambda", "0.1", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    assert report["theta_hat"][0] == pytest.approx(0.997527, abs=1e-6)
    assert report["estimator"] == "true_q"
    assert len(report["config_hash"]) == 64


def test_optimize_with_box_constant(tmp_path: Path) -> None:
    out = tmp_path / "opt.json"
    argv = ["optimize", "--K", "8", "--n", "400", "--C-box", "0.05", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    lo, hi = report["box"][0]
    assert all(lo <= t <= hi for t in report["theta_hat"])


def test_infeasible_box_constant() -> None:
    assert run(["optimize", "--K", "10", "--n", "1024", "--C-box", str(2.0**-10)]) == EXIT_CONFIG


@pytest.mark.slow
def test_optimize_large_sample_close_to_truth(tmp_path: Path) -> None:
    out = tmp_path / "opt.json"
    argv = ["optimize", "--K", "1", "--n", "100000", "--lambda", "0.1", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    assert _report(out)["theta_hat"][0] == pytest.approx(0.997527, abs=0.02)


def test_split_infer(tmp_path: Path) -> None:
    out = tmp_path / "split.json"
    argv = ["split-infer", "--K", "2", "--n", "400", "--split", "0.25", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    assert (report["n1"], report["n2"]) == (100, 300)
    assert report["estimator"] == "ipw"


def test_validate_structured_report(tmp_path: Path) -> None:
    out = tmp_path / "claim.json"
    argv = ["validate", "unbiasedness", "--R", "100", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    assert {"claim", "statistic", "target", "se", "pass", "seed", "runtime", "result_hash", "config_hash"} <= set(report)
    assert report["claim"] == "unbiasedness"


def test_mixture_command(tmp_path: Path) -> None:
    out = tmp_path / "mix.json"
    argv = ["mixture", "--K", "3", "--n", "800", "--k-clusters", "2", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    assert len(report["theta"]) == 3
    assert report["k"] == 2


def test_bernoulli_mixture_clusters_raw_outcomes(tmp_path: Path) -> None:
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text(
        "sim:\n  K: 3\n  n: 4000\n  c: [0.1, 0.9, 0.1, 0.9, 0.1, 0.9, 0.1, 0.9]\nmixture:\n  family: bernoulli\n",
        encoding="utf-8",
    )
    out = tmp_path / "mix.json"
    assert run(["mixture", "--config", str(cfg), "--format", "structured", "--out", str(out)]) == EXIT_OK
    report = _report(out)
    assert report["family"] == "bernoulli"
    assert report["cells"] == list(range(8))
    assert len(report["labels"]) == 8
    assert report["theta"] == pytest.approx([1 - 1e-6, 0.5, 0.5])


def test_basis_select_rejects_planted_index_outside_p() -> None:
    assert run(["basis-select", "--p", "16"]) == EXIT_CONFIG


def test_basis_select_on_regression_file(tmp_path: Path) -> None:
    data = tmp_path / "reg.csv"
    cfg = tmp_path / "cfg.yaml"
    cfg.write_text("basis:\n  p: 16\n  strong: [3, 9]\n  n: 400\n  draws: 200\n", encoding="utf-8")
    assert run(["simulate", "--regression", "--config", str(cfg), "--out", str(data)]) == EXIT_OK
    out = tmp_path / "sel.json"
    argv = ["basis-select", "--config", str(cfg), "--data", str(data), "--select-k", "2", "--format", "structured", "--out", str(out)]
    assert run(argv) == EXIT_OK
    report = _report(out)
    assert report["p"] == 16
    assert len(report["indices"]) == 2
    assert "planted" not in report


def test_changing_k_drops_cell_settings() -> None:
    args = build_parser().parse_args(["optimize", "--K", "3"])
    cfg = resolve_config(args)
    assert cfg.sim.K == 3
    assert cfg.sim.c is None


def test_validate_uses_claim_fixture() -> None:
    cfg = resolve_config(build_parser().parse_args(["validate", "mean-variance", "--R", "10", "--seed", "2"]))
    assert (cfg.sim.K, cfg.sim.family, cfg.sim.replicates) == (1, "gaussian", 10)
    assert cfg.seed == cfg.optimizer.seed == cfg.em.seed == 2


def test_lambda_targets_basis_for_basis_select() -> None:
    cfg = resolve_config(build_parser().parse_args(["basis-select", "--lambda", "0.5"]))
    assert cfg.basis.lam == 0.5
    assert cfg.objective.lam == 0.1

"""Command-line entry point.

Usage:
    factorial-intervention simulate --K 3 --n 500 --seed 7 --out data.csv
    factorial-intervention estimate --data data.csv
    factorial-intervention optimize --data data.csv --estimator ipw --lambda 0.1
    factorial-intervention split-infer --data data.csv --split 0.5
    factorial-intervention validate unbiasedness --replicates 2000 --format structured
    factorial-intervention mixture --data data.csv --k-clusters 2
    factorial-intervention basis-select --p 256 --select-k 3

Settings come from ``--config`` (YAML or JSON mirroring ``RunConfig``), then
command flags on top. Exit codes: 0 success, 2 configuration or data error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

import yaml
from pydantic import ValidationError

from config.schema import RunConfig, load_config
from contracts.data import FactorialDataset, RegressionSample
from contracts.design import PotentialOutcomeTable
from engine.basis.family import indicator_partition
from engine.basis.policy import select_bases
from engine.basis.ustat import u_stat_coefficients
from engine.design.combos import bits_to_index
from engine.errors import ConfigurationError, FactorialError, NumericalError
from engine.estimators.cells import summarize_cells, within_cell_variance
from engine.inference.splitting import fit_policy, split_estimate
from engine.mixture.em import fit_mixture
from engine.mixture.policy import cell_mean_values, fit_outcome_mixture, top_cluster_policy
from engine.optimizer.box import highdim_box
from services.harness.claims import CLAIMS, fixture_config, run_claim
from services.harness.simulate import generate, generate_regression, replicate_rng
from services.reports.io import read_dataset, read_regression, write_dataset, write_regression
from services.reports.reports import (
    emit,
    envelope,
    mixture_record,
    optim_record,
    selection_record,
    split_record,
    summary_record,
)

LOG = logging.getLogger("factorial.cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

ESTIMATORS = ("true_q", "adaptive", "ipw", "hajek", "mean_variance")


# ── argument parsing ────────────────────────────────────────────────────


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="YAML/JSON run configuration")
    common.add_argument("--seed", type=int, default=None, help="master seed for all randomness")
    common.add_argument("--out", default=None, help="output path (stdout when omitted)")
    common.add_argument("--format", choices=("human", "structured"), default=None)
    common.add_argument("--verbose", action="store_true")
    return common


def _sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--K", type=int, default=None, help="number of binary factors")
    p.add_argument("--n", type=int, default=None, help="number of units")


def _objective_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--estimator", choices=ESTIMATORS, default=None)
    p.add_argument("--variant", choices=("plugin", "u1", "u2"), default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="factorial-intervention",
        description="Stochastic interventions for factorial experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="emit a synthetic dataset")
    _sim_flags(p)
    p.add_argument("--index", type=int, default=0, help="replicate index")
    p.add_argument("--regression", action="store_true", help="emit the planted basis regression sample")

    p = sub.add_parser("estimate", parents=[common], help="cell summaries of a dataset")
    p.add_argument("--data", default=None)

    p = sub.add_parser("optimize", parents=[common], help="maximise an estimated objective")
    p.add_argument("--data", default=None, help="dataset CSV; simulated from the config when omitted")
    _sim_flags(p)
    _objective_flags(p)
    p.add_argument("--C-box", dest="c_box", type=float, default=None, help="high-dimensional box constant C")

    p = sub.add_parser("split-infer", parents=[common], help="fit on one fold, evaluate on the other")
    p.add_argument("--data", default=None)
    _sim_flags(p)
    _objective_flags(p)
    p.add_argument("--split", type=float, default=None, help="fraction of rows in the fitting fold")
    p.add_argument("--eval-estimator", choices=("ipw", "hajek", "adaptive", "mean_variance"), default=None)

    p = sub.add_parser("validate", parents=[common], help="run a Monte Carlo claim")
    p.add_argument("claim", choices=sorted(CLAIMS))
    _sim_flags(p)
    p.add_argument("--replicates", "--R", dest="replicates", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)

    p = sub.add_parser("mixture", parents=[common], help="cluster cell means, report top-cluster policy")
    p.add_argument("--data", default=None)
    _sim_flags(p)
    p.add_argument("--k-clusters", dest="k_clusters", type=int, default=None)
    p.add_argument("--family", choices=("gaussian", "bernoulli"), default=None)

    p = sub.add_parser("basis-select", parents=[common], help="select basis functions by bit policy")
    p.add_argument("--data", default=None, help="regression CSV x1..xd,y; planted model when omitted")
    p.add_argument("--p", type=int, default=None, help="number of basis functions")
    p.add_argument("--select-k", dest="select_k", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--strategy", choices=("iid", "deflate"), default=None)
    return parser


# ── configuration ───────────────────────────────────────────────────────


def _set(tree: dict[str, Any], path: str, value: Any) -> None:
    if value is None:
        return
    *parents, leaf = path.split(".")
    node = tree
    for key in parents:
        node = node.setdefault(key, {})
    node[leaf] = value


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file (or claim fixture / defaults), then flags on top."""
    if args.config is not None:
        base = load_config(args.config)
    elif args.command == "validate":
        base = fixture_config(args.claim)
    else:
        base = RunConfig()
    tree = base.model_dump()
    get = vars(args).get

    K = get("K")
    if K is not None and K != base.sim.K:
        # cell-indexed settings no longer fit the new factor count
        tree["sim"]["c"] = None
        if isinstance(base.sim.sigma, list):
            tree["sim"]["sigma"] = 1.0
        if base.sim.assignment == "product":
            tree["sim"]["assignment"] = "uniform"
            tree["sim"]["pi"] = None
    _set(tree, "sim.K", K)
    _set(tree, "sim.n", get("n"))
    _set(tree, "sim.replicates", get("replicates"))
    _set(tree, "objective.estimator", get("estimator"))
    _set(tree, "objective.variant", get("variant"))
    _set(tree, "basis.lam" if args.command == "basis-select" else "objective.lam", get("lam"))
    _set(tree, "split.fraction", get("split"))
    _set(tree, "split.eval_estimator", get("eval_estimator"))
    _set(tree, "mixture.k", get("k_clusters"))
    _set(tree, "mixture.family", get("family"))
    _set(tree, "basis.p", get("p"))
    _set(tree, "basis.select_k", get("select_k"))
    _set(tree, "basis.strategy", get("strategy"))
    _set(tree, "data", get("data"))
    _set(tree, "output", args.out)
    _set(tree, "format", args.format)
    if args.seed is not None:
        for path in ("seed", "optimizer.seed", "em.seed"):
            _set(tree, path, args.seed)
    return RunConfig.model_validate(tree)


# ── commands ────────────────────────────────────────────────────────────


def _dataset(cfg: RunConfig) -> tuple[FactorialDataset, PotentialOutcomeTable | None]:
    """The ``--data`` file, or replicate 0 simulated from ``cfg.sim`` with its known table."""
    if cfg.data is not None:
        dist = cfg.sim.dist() if cfg.sim.assignment == "product" else None
        data = read_dataset(cfg.data, dist)
        LOG.info("loaded %s: n=%d K=%d", cfg.data, data.n, data.K)
        return data, None
    LOG.info("no --data given; simulating K=%d n=%d (seed=%d)", cfg.sim.K, cfg.sim.n, cfg.seed)
    return generate(cfg.sim, 0, cfg.seed), cfg.sim.table()


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> None:
    if args.regression:
        b = cfg.basis
        family = indicator_partition(b.d, b.p)
        sample = generate_regression(b, family, replicate_rng(cfg.seed, args.index))
        write_regression(sample, cfg.output)
        LOG.info("simulated regression sample n=%d d=%d", sample.n, sample.d)
        return
    data = generate(cfg.sim, args.index, cfg.seed)
    write_dataset(data, cfg.output)
    LOG.info("simulated dataset n=%d K=%d index=%d", data.n, data.K, args.index)


def cmd_estimate(cfg: RunConfig, args: argparse.Namespace) -> None:
    if cfg.data is None:
        raise ConfigurationError("estimate needs --data (or data: in the config)")
    data = read_dataset(cfg.data, cfg.sim.dist() if cfg.sim.assignment == "product" else None)
    summary = summarize_cells(data)
    payload = summary_record(summary)
    payload["within_cell_variance"] = within_cell_variance(summary).tolist()
    emit(envelope("estimate", payload, cfg), cfg.format, cfg.output)


def cmd_optimize(cfg: RunConfig, args: argparse.Namespace) -> None:
    data, table = _dataset(cfg)
    box = cfg.optimizer.box
    if args.c_box is not None:
        box = highdim_box(data.K, data.n, args.c_box, cfg.optimizer.eps_box)
    result = fit_policy(data, cfg.objective, cfg.optimizer, table=table, box=box)
    payload = {
        "estimator": cfg.objective.label(),
        "lambda": cfg.objective.lam,
        "K": data.K,
        "n": data.n,
        **optim_record(result),
    }
    if box is not None:
        payload["box"] = [list(pair) for pair in box]
    emit(envelope("optimize", payload, cfg), cfg.format, cfg.output)


def cmd_split_infer(cfg: RunConfig, args: argparse.Namespace) -> None:
    data, table = _dataset(cfg)
    result = split_estimate(
        data,
        cfg.split.fraction,
        cfg.objective,
        cfg.optimizer,
        cfg.seed,
        eval_estimator=cfg.split.eval_estimator,
        include_penalty=cfg.split.include_penalty,
        table=table,
    )
    payload = {"fit_estimator": cfg.objective.label(), "lambda": cfg.objective.lam, **split_record(result)}
    emit(envelope("split-infer", payload, cfg), cfg.format, cfg.output)


def cmd_validate(cfg: RunConfig, args: argparse.Namespace) -> None:
    report = run_claim(args.claim, cfg)
    payload = {**report.record(), "result_hash": report.result_hash()}
    emit(envelope("validate", payload, cfg), cfg.format, cfg.output)


def cmd_mixture(cfg: RunConfig, args: argparse.Namespace) -> None:
    data, _ = _dataset(cfg)
    m = cfg.mixture
    if m.family == "bernoulli":
        # units are clustered, cells take the label carrying most of their mass
        fit, labels, bits = fit_outcome_mixture(data, m.k, cfg.em, seed=cfg.seed)
    else:
        values, bits = cell_mean_values(summarize_cells(data))
        fit = fit_mixture(values, m.k, "gaussian", cfg.em, seed=cfg.seed)
        labels = fit.labels
    j_hat, theta = top_cluster_policy(fit, bits, cfg.optimizer.eps_box, labels=labels)
    payload = {
        **mixture_record(fit),
        "labels": labels.tolist(),
        "cells": [int(c) for c in bits_to_index(bits)],
        "top_cluster": j_hat,
        "theta": list(theta.values),
    }
    emit(envelope("mixture", payload, cfg), cfg.format, cfg.output)


def cmd_basis_select(cfg: RunConfig, args: argparse.Namespace) -> None:
    b = cfg.basis
    sample: RegressionSample
    if cfg.data is not None:
        sample = read_regression(cfg.data)
        planted = None
    else:
        sample = generate_regression(b, indicator_partition(b.d, b.p), replicate_rng(cfg.seed, 0))
        planted = sorted(set(b.strong))
    family = indicator_partition(sample.d, b.p)
    c_hat = u_stat_coefficients(sample, family, clamp_negative=b.clamp_negative)
    selection = select_bases(
        c_hat,
        b.select_k,
        b.lam,
        cfg.optimizer,
        cfg.seed,
        strategy=b.strategy,
        draws=b.draws,
        padded=family.padded,
    )
    payload: dict[str, Any] = {"n": sample.n, "d": sample.d, **selection_record(selection)}
    if planted is not None:
        payload["planted"] = planted
        payload["recovered"] = set(selection.indices) == set(planted)
    emit(envelope("basis-select", payload, cfg), cfg.format, cfg.output)


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], None]] = {
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "optimize": cmd_optimize,
    "split-infer": cmd_split_infer,
    "validate": cmd_validate,
    "mixture": cmd_mixture,
    "basis-select": cmd_basis_select,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = resolve_config(args)
        COMMANDS[args.command](cfg, args)
    except NumericalError as exc:
        LOG.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (FactorialError, ValidationError, yaml.YAMLError, OSError) as exc:
        LOG.error("configuration error: %s", exc)
        return EXIT_CONFIG
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

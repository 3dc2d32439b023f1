"""Report records and their human / structured renderings.

Every record embeds the command, the master seed and a hash of the
effective configuration, so a report can be tied back to the run that
produced it.
"""

from __future__ import annotations

import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Any

import numpy as np

from config.schema import ReportFormat, RunConfig
from contracts.data import CellSummary
from contracts.results import BasisSelection, MixtureFit, OptimResult, SplitResult

LOG = logging.getLogger("factorial.reports")

_RULE = "─" * 8


def config_hash(config: RunConfig) -> str:
    """sha256 of the configuration as sorted JSON."""
    payload = config.model_dump(mode="json", by_alias=True)
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def summary_record(summary: CellSummary) -> dict[str, Any]:
    return {
        "K": summary.K,
        "n": summary.n,
        "n_empty": summary.n_empty,
        "n_t": summary.n_t.tolist(),
        "c_hat": summary.c_hat.tolist(),
        "c_tilde": summary.c_tilde.tolist(),
        "empty": summary.empty.tolist(),
    }


def optim_record(result: OptimResult) -> dict[str, Any]:
    return {
        "theta_hat": list(result.theta_hat.values),
        "value": result.value,
        "converged": result.converged,
        "iterations": result.iterations,
        "start_index": result.start_index,
        "start_spread": result.spread,
    }


def split_record(result: SplitResult) -> dict[str, Any]:
    return {
        "theta_1": list(result.theta_1.values),
        "q_hat": result.q_hat,
        "fit_value": result.fit_value,
        "n1": result.n1,
        "n2": result.n2,
        "split_seed": result.seed,
        "estimator": result.estimator,
        "include_penalty": result.include_penalty,
    }


def mixture_record(fit: MixtureFit) -> dict[str, Any]:
    return {
        "family": fit.family,
        "k": fit.k,
        "pi": list(fit.pi),
        "d": list(fit.d),
        "sigma": list(fit.sigma),
        "loglik": fit.loglik[-1] if fit.loglik else None,
        "converged": fit.converged,
        "iterations": fit.iterations,
        "labels": fit.labels.tolist(),
    }


def selection_record(selection: BasisSelection) -> dict[str, Any]:
    return {
        "indices": list(selection.indices),
        "strategy": selection.strategy,
        "p": selection.p,
        "padded": selection.padded,
        "policy_theta": list(selection.policy.theta.values),
        "value": selection.value,
        "round_values": list(selection.round_values),
    }


def envelope(command: str, payload: dict[str, Any], config: RunConfig) -> dict[str, Any]:
    return {"command": command, "seed": config.seed, "config_hash": config_hash(config), **payload}


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serialisable: {type(value).__name__}")


def _scalar(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, default=_plain)
    return str(value)


def render_human(record: dict[str, Any]) -> str:
    title = record.get("command", "report")
    lines = [f"{_RULE} {title} {_RULE}"]
    width = max((len(k) for k in record), default=0) + 1
    for key, value in record.items():
        if key == "command":
            continue
        if isinstance(value, dict) and value:
            lines.append(f"{key}:")
            inner = max(len(str(k)) for k in value) + 1
            lines.extend(f"  {str(k) + ':':<{inner}} {_scalar(v)}" for k, v in value.items())
        else:
            lines.append(f"{key + ':':<{width}} {_scalar(value)}")
    lines.append(_RULE * 6)
    return "\n".join(lines) + "\n"


def render(record: dict[str, Any], fmt: ReportFormat) -> str:
    if fmt == "structured":
        return json.dumps(record, indent=2, default=_plain) + "\n"
    return render_human(record)


def emit(record: dict[str, Any], fmt: ReportFormat, out: str | Path | None = None) -> None:
    """Write the rendered record to ``out``, or stdout when ``out`` is None."""
    text = render(record, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    LOG.info("report written: %s", path)


__all__ = [
    "config_hash",
    "emit",
    "envelope",
    "mixture_record",
    "optim_record",
    "render",
    "render_human",
    "selection_record",
    "split_record",
    "summary_record",
]

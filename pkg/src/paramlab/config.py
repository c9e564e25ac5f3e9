"""Experiment configuration: TOML files layered over per-command defaults."""

from __future__ import annotations

import copy
import hashlib
import json
import math
import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .recurrence import DEFAULT_EPSILON, LO_TERMINAL_PERIOD, PSI_TABLE, TABLE_GRID

COMMANDS = ("landscape", "tune", "blindness", "validate", "tables")

_RECURRENCE = {
    "grid": list(TABLE_GRID),
    "psi": float(PSI_TABLE),
    "periods": LO_TERMINAL_PERIOD,
    "start_period": LO_TERMINAL_PERIOD + 1,
    "epsilon": DEFAULT_EPSILON,
    "curve_stride": 1000,
    "precision": "double",
}

DEFAULTS = {
    "landscape": {"master_seed": 0, "recurrence": _RECURRENCE},
    "tables": {
        "master_seed": 0,
        "recurrence": _RECURRENCE,
        "tables": {"endpoint_tol": 1e-6, "row_tol": 0.5, "tol_row": 1.6, "magnitude_factor": 10.0},
    },
    "tune": {
        "master_seed": 0,
        "campaign": {
            "space": {"d": 2, "phi": 3},
            "metric": "F",
            "instance": {"kind": "ridge", "n": 200, "mask": "zeros"},
            "kappa_expr": "10*n",
            "r": 1,
            "p": 10.0,
            "T": 100,
            "n_campaigns": 50,
        },
        "checks": {"target_chi": 1.0, "max_mean_comparisons": 72.0, "min_final_share": 0.9},
        "trace": False,
    },
    "blindness": {
        "master_seed": 0,
        "campaign": {
            "space": {"d": 2, "phi": 3},
            "metric": "T",
            "instance": {"kind": "ridge", "n": 50, "mask": "zeros"},
            "kappa_expr": "1*n^2",
            "r": 1,
            "p": 10.0,
            "T": 20,
            "n_campaigns": 2000,
        },
        "blindness": {"oracle_samples": 100_000, "alpha": 0.01, "expect_blind": True},
    },
    "validate": {
        "master_seed": 0,
        "runtime": [
            {"kind": "ridge", "n": 100, "chi": 1.0, "runs": 200, "target": math.e, "rel_tol": 0.1,
             "compare": [0.5, 2.0]},
            {"kind": "leadingones", "n": 100, "chi": 1.6, "runs": 200, "target": 0.772, "rel_tol": 0.1,
             "compare": [1.0, 3.0]},
        ],
        "bracketing": [
            {"n": 1000, "chis": [1.0, 1.6, 2.5], "runs": 30, "psi": 100.0, "margin": 0.05,
             "min_fraction": 0.99},
        ],
    },
}


# sections a file replaces wholesale instead of merging into the defaults
_REPLACED = {"checks"}


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict) and key not in _REPLACED:
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def load_config(command: str, path: str | Path | None = None, seed: int | None = None) -> dict:
    """Defaults for ``command`` overridden by the TOML file at ``path`` and by ``seed``."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    cfg = copy.deepcopy(DEFAULTS[command])
    if path is not None:
        with open(path, "rb") as fh:
            cfg = _merge(cfg, tomllib.load(fh))
    if seed is not None:
        cfg["master_seed"] = int(seed)
    return cfg


def config_hash(cfg: dict) -> str:
    """SHA-256 of the resolved configuration in canonical JSON form."""
    text = json.dumps(cfg, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()

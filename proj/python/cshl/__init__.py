"""Chern-Simons-Higgs simulator in Lorenz gauge, with wave-Sobolev norm tools."""

import json

from ._core import (
    Config,
    ConfigError,
    Error,
    InvalidRange,
    SingularZeroMode,
    StepUnstable,
    angle_bound_check,
    condition_set_threshold,
    constraint_max,
    energy,
    evolve,
    frac_lap,
    initial_state,
    lp_norm,
    product_law,
    riesz,
    scan_minimal_s,
    sobolev_norm,
)
from ._core import run as _run

__all__ = [
    "Config",
    "ConfigError",
    "Error",
    "InvalidRange",
    "SingularZeroMode",
    "StepUnstable",
    "angle_bound_check",
    "condition_set_threshold",
    "constraint_max",
    "energy",
    "evolve",
    "frac_lap",
    "initial_state",
    "lp_norm",
    "product_law",
    "riesz",
    "run",
    "scan_minimal_s",
    "sobolev_norm",
]


def run(command, config=None, output_dir=None, **overrides):
    """Run one CLI command in-process and return (passed, summary dict).

    Keyword overrides use double underscores for dots: grid__n=64.
    """
    cfg = config if config is not None else Config()
    for key, value in overrides.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        cfg.set(key.replace("__", "."), str(value))
    if output_dir is not None:
        cfg.output_dir = str(output_dir)
    cfg.validate()
    passed, summary, _log = _run(command, cfg)
    return passed, json.loads(summary)

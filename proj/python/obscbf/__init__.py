"""Observer-based adaptive control barrier function simulator."""

import json

from ._core import (
    Controller,
    ErrorBoundModel,
    Experiment,
    QpResult,
    Trace,
    basis,
    emit_plot,
    error_bound,
    interval_bound,
    make_preset,
    parse_config,
    preset_names,
    solve_boxed_qp,
    solve_halfspace_qp,
)
from ._core import _run_preset

__all__ = [
    "Controller",
    "ErrorBoundModel",
    "Experiment",
    "QpResult",
    "Trace",
    "basis",
    "emit_plot",
    "error_bound",
    "interval_bound",
    "make_preset",
    "parse_config",
    "preset_names",
    "run_preset",
    "solve_boxed_qp",
    "solve_halfspace_qp",
]


def run_preset(name, overrides=None, out_dir="out"):
    """Run a scenario like the command line tool. Returns (exit_code, stdout, stderr)."""
    return _run_preset(name, json.dumps(overrides or {}), str(out_dir))

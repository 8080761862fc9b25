"""Python bindings for the zerocap pattern-formation pipeline."""

import json as _json

from ._core import (
    INSUFFICIENT_SEGMENTATION,
    ZerocapError,
    descriptor,
    gate_passes,
    geometric_plan,
    match_positions,
    metrics,
    synthesize_suite,
    validate_caging,
    validate_infill,
)
from . import _core

__all__ = [
    "INSUFFICIENT_SEGMENTATION",
    "ZerocapError",
    "describe_mask",
    "descriptor",
    "gate_passes",
    "geometric_plan",
    "match_positions",
    "metrics",
    "run_scenario",
    "synthesize_suite",
    "validate_caging",
    "validate_infill",
]


def describe_mask(mask, epsilon_px=2.0, scale=1.0):
    """Shape graph of a 2-D mask as {"vertices": [{"x", "y"}], "edges": [[i, j]]}."""
    return _json.loads(_core.describe_mask_json(mask, epsilon_px, scale))


def run_scenario(scenario, mock_dir, solver="llm", descriptor="edges", gate_threshold=0.5, out_dir=None):
    """Runs the pipeline with fixture-backed clients and returns result.json as a dict."""
    return _json.loads(
        _core.run_scenario_json(str(scenario), str(mock_dir), solver, descriptor, gate_threshold,
                                None if out_dir is None else str(out_dir)))

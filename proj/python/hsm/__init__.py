"""Hybrid surrogate models for discontinuous reconstruction and transport."""

import json

from ._hsm import (
    SCHEMA_VERSION,
    ConfigError,
    Surrogate,
    chebyshev,
    diff_matrix,
    legendre_grid,
    normalize_config,
    validate_config,
)
from ._hsm import run_config as _run_config

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "Surrogate",
    "chebyshev",
    "diff_matrix",
    "legendre_grid",
    "normalize_config",
    "run",
    "surrogates",
    "validate_config",
]


def run(config):
    """Run an experiment from a config dict or JSON string. Returns the report dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_run_config(text))


def surrogates(report):
    """HSM and PSM parameters of a report, keyed by method name."""
    return {row["method"]: Surrogate.from_json(json.dumps(row["theta"])) for row in report["methods"]}

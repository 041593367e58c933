"""IRS-aided NO-ISAC Cramer-Rao simulator."""

import json as _json

from ._core import (
    ConfigError,
    SingularFimError,
    csv_header,
    run_cli,
    ura_response,
)
from . import _core

__all__ = [
    "ConfigError",
    "SingularFimError",
    "compare",
    "csv_header",
    "run_block",
    "run_cli",
    "sweep",
    "ura_response",
    "validate_config",
    "verify",
]


def _text(config):
    if config is None:
        return "{}"
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def validate_config(config=None):
    _core.validate_config(_text(config))


def run_block(config=None, sub_irs=1, seed=0, phases="optimized"):
    return _core.run_block(_text(config), sub_irs, seed, phases)


def compare(config=None, seed=0, seeds=1, jobs=1):
    return _core.compare(_text(config), seed, seeds, jobs)


def sweep(param, grid, config=None, seed=0, seeds=1, jobs=1):
    return _core.sweep(_text(config), param, list(grid), seed, seeds, jobs)


def verify(config=None, seed=0, fim_instances=100, ce_runs=20):
    return _core.verify(_text(config), seed, fim_instances, ce_runs)

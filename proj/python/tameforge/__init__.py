"""Tame-set automorphism constructions with numerical verification."""

import json

from ._core import *  # noqa: F401,F403
from ._core import ConfigError, RunConfig, TameforgeError, __version__, commands, run_json


def run(command, **options):
    """Run a CLI command in-process; returns (report dict, exit code).

    Options mirror the CLI flags: k, seed, injection, range, tol, mode, m, n,
    points, eps, growth, preset, variety (a dict).
    """
    cfg = RunConfig()
    cfg.command = command
    for key, value in options.items():
        if key == "variety" and value is not None:
            value = json.dumps(value)
        if not hasattr(cfg, key):
            raise ConfigError(f"unknown option {key}")
        setattr(cfg, key, value)
    text, code = run_json(cfg)
    return json.loads(text), code


__all__ = ["run", "ConfigError", "TameforgeError", "RunConfig", "commands", "__version__"]

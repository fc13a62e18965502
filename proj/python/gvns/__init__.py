"""Vlasov-Navier-Stokes on the torus with Gevrey-regularity diagnostics.

The heavy lifting lives in the compiled ``_gvns`` module; this wrapper turns
the JSON reports into dicts and accepts config files as well as config text.
"""

import json
import os

from . import _gvns
from ._gvns import (
    ConfigError,
    GevreyOverflow,
    GvnsError,
    HypothesisError,
    SnapshotError,
    Underresolved,
    crc32,
    estimate_empirical_radius,
    gevrey_norm_f,
    integrate_lambda,
    lab_suites,
    lambda_lower_bound,
    read_diagnostics,
    read_snapshot,
)

__all__ = [
    "ConfigError", "GevreyOverflow", "GvnsError", "HypothesisError", "SnapshotError", "Underresolved",
    "canonical_config", "crc32", "estimate_empirical_radius", "gevrey_norm_f", "integrate_lambda",
    "lab", "lab_suites", "lambda_lower_bound", "read_diagnostics", "read_snapshot", "run", "simulate", "verify",
]


def _text(config):
    # A path to an existing file, or config text itself.
    if "\n" not in config and "=" not in config and os.path.isfile(config):
        with open(config, encoding="utf-8") as fh:
            return fh.read()
    return config


def canonical_config(config):
    return _gvns.canonical_config(_text(config))


def simulate(config):
    """Run in memory. Returns a dict with status fields and ``columns``: name -> numpy array."""
    return _gvns.simulate(_text(config))


def run(config, output):
    """Run and write ``output``/diagnostics.csv plus snapshots."""
    return _gvns.run(_text(config), os.fspath(output))


def verify(csv_path, expect_decay=False):
    return json.loads(_gvns.verify_json(os.fspath(csv_path), expect_decay))


def lab(suite="all", seed=1):
    return [json.loads(r) for r in _gvns.lab_json(suite, seed)]

"""Aluthge iteration of composition operators on weighted Bergman spaces."""

import json

from ._core import (
    ConfigError,
    DomainError,
    WeightedLFT,
    __version__,
    aluthge_numeric,
    c_phi,
    cli,
    iterate,
    norm_value,
    numerical_radius,
    operator_norm,
    sot_curve,
)
from ._core import verify as _verify


def verify(config="", threads=0):
    """Run the experiment harness and return the parsed JSON report."""
    return json.loads(_verify(config, threads))


__all__ = [
    "ConfigError",
    "DomainError",
    "WeightedLFT",
    "__version__",
    "aluthge_numeric",
    "c_phi",
    "cli",
    "iterate",
    "norm_value",
    "numerical_radius",
    "operator_norm",
    "sot_curve",
    "verify",
]

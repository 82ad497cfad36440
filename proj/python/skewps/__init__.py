"""Python access to the skewps verification suites."""

import json

from ._core import (
    ConfigError,
    Error,
    GroupAlgebra,
    InstanceError,
    decompose,
    is_prime,
    list_suites,
    pipeline_sfoh,
    verify,
)


def verify_report(config, suites=(), timings=False):
    """Run a config and return the parsed JSON report."""
    _, text = verify(str(config), list(suites), timings)
    return json.loads(text)


__all__ = [
    "ConfigError",
    "Error",
    "GroupAlgebra",
    "InstanceError",
    "decompose",
    "is_prime",
    "list_suites",
    "pipeline_sfoh",
    "verify",
    "verify_report",
]

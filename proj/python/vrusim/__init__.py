"""Peak age-of-information simulator for periodic road-user awareness messages.

The heavy lifting happens in the compiled extension; this wrapper converts
between python dicts and the JSON the core speaks, so results are identical
to the command line tool's output.
"""

import json as _json

from ._core import (
    AoiTracker,
    Error,
    ParseError,
    ValidationError,
    __version__,
    pathloss_db,
    shannon_rate,
)
from . import _core

__all__ = [
    "AoiTracker",
    "Error",
    "ParseError",
    "ValidationError",
    "__version__",
    "config_digest",
    "default_config",
    "pathloss_db",
    "run",
    "shannon_rate",
    "sweep",
]


def _config_text(config):
    """Accepts a dict, a JSON string, or None (defaults)."""
    if config is None:
        return "{}"
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def default_config():
    """The calibrated default scenario as a dict."""
    return _json.loads(_core.default_config_json())


def config_digest(config=None):
    """Scenario digest; unchanged by seed and architecture."""
    return _core.config_digest(_config_text(config))


def run(config=None, *, architecture=None, seed=None, log_packets=False):
    """Run one scenario and return the result report as a dict.

    ``architecture`` ("mec" or "conventional") and ``seed`` override the
    corresponding config fields, which is how paired comparisons are made.
    """
    merged = _json.loads(_config_text(config))
    if architecture is not None:
        merged["architecture"] = architecture
    if seed is not None:
        merged["seed"] = seed
    return _json.loads(_core.run_json(_json.dumps(merged), log_packets))


def sweep(config=None, *, axis, values, reps=5):
    """Sweep one axis, running both architectures per point.

    ``axis`` is "density" (values are VRU counts) or "interarrival" (values
    are message periods in seconds). Returns a list of row dicts matching the
    CLI's CSV columns.
    """
    text = _config_text(config)
    if axis == "density":
        rows = _core.sweep_density_json(text, [int(v) for v in values], reps)
    elif axis == "interarrival":
        rows = _core.sweep_interarrival_json(text, [float(v) for v in values], reps)
    else:
        raise ValueError(f"unknown sweep axis {axis!r} (expected 'density' or 'interarrival')")
    return _json.loads(rows)

import json

from ._core import empty_shadow, fusion, level_labels, quantum_dim, selfcheck
from ._core import run_config as _run_config


def run(config, threads=1, tolerance=1e-9):
    """Run a job. Accepts a dict or a JSON string; returns the report as a dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_run_config(text, threads, tolerance))


__all__ = ["empty_shadow", "fusion", "level_labels", "quantum_dim", "run", "selfcheck"]

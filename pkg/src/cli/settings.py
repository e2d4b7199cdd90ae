import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    "log_level": "WARNING",
    "log_file": None,
    "window_margin": 0,
    "max_window_doublings": 4,
    "verify_symmetry": True,
    "jobs": 1,
    "timings": False,
    "output_format": "pretty",
    "convention": "engine",
    "invariant_level": 4,
}


def load_config(config_path: Optional[Union[str, Path]] = "config.yaml") -> Dict[str, Any]:
    """
    Load settings from a YAML file on top of the defaults.

    A missing or unreadable file is not an error: the defaults are used and a
    warning is logged.
    """
    config = dict(DEFAULTS)
    if config_path is None:
        return config
    try:
        with open(config_path, "r") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError("top level is not a mapping")
        config.update(loaded)
    except FileNotFoundError:
        logger.warning(f"Config file not found: {config_path}; using defaults")
    except (yaml.YAMLError, ValueError) as e:
        logger.warning(f"Error loading config {config_path}: {e}; using defaults")
    return config

#!/usr/bin/env python3
"""
Configuration loading for the fink toolkit.

Settings live in config/fink_config.yaml. String values of the form
``${section.key}`` refer to other settings and are resolved after loading.
The FINK_CONFIG environment variable (read after loading .env) overrides
the config path, FINK_LOG_LEVEL the logging level.
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "fink_config.yaml"

DEFAULT_CONFIG: Dict[str, Any] = {
    "global": {
        "logging_level": "INFO",
        "log_file": None,
        "seed": 0,
    },
    "search": {
        "workers": 1,
        "distinctness_max_generators": 6,
        "estimate_max_n": 12,
        "progress": True,
    },
    "tolerances": {
        "grid_snap": 1e-9,
        "root_residual": 1e-12,
        "norm": 1e-9,
    },
    "net": {
        "sample_chunk": 1000,
    },
    "commands": {
        "canonize": {"workers": "${search.workers}"},
        "estimate_n": {"workers": "${search.workers}", "max_n": "${search.estimate_max_n}"},
    },
}


def _lookup(config: Dict[str, Any], path: str) -> Any:
    value: Any = config
    for key in path.split("."):
        if not isinstance(value, dict) or key not in value:
            return None
        value = value[key]
    return value


def resolve_references(config: Dict[str, Any], node: Any = None) -> Any:
    """
    Replace every ``${a.b}`` string with the value at config[a][b].
    Unknown references resolve to None and are logged.
    """
    node = config if node is None else node
    if isinstance(node, dict):
        return {key: resolve_references(config, value) for key, value in node.items()}
    if isinstance(node, list):
        return [resolve_references(config, value) for value in node]
    if isinstance(node, str) and node.startswith("${") and node.endswith("}"):
        path = node[2:-1]
        value = _lookup(config, path)
        if value is None:
            logger.warning(f"Unresolved config reference {node}")
        return resolve_references(config, value) if isinstance(value, str) and value != node else value
    return node


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration from YAML.

    Args:
        config_path: Path to the configuration file; defaults to FINK_CONFIG
            or config/fink_config.yaml

    Returns:
        dict: Resolved configuration, defaults filled in for missing keys
    """
    load_dotenv()
    path = config_path or os.getenv("FINK_CONFIG") or str(DEFAULT_CONFIG_PATH)
    try:
        with open(path, "r") as f:
            loaded = yaml.safe_load(f) or {}
        config = _merge(DEFAULT_CONFIG, loaded)
    except Exception as e:
        logger.error(f"Failed to load configuration from {path}: {str(e)}")
        config = copy.deepcopy(DEFAULT_CONFIG)

    level = os.getenv("FINK_LOG_LEVEL")
    if level:
        config["global"]["logging_level"] = level.upper()
    return resolve_references(config)

"""
Utils Module - Helper functions shared by the experiment runner.
Provides logging setup, path resolution and access to the frozen
regression fixtures.
"""

import json
import logging
import os
from typing import Any, Dict, Optional

_logger = logging.getLogger(__name__)

# Frozen oracle values live next to the code
FIXTURE_FILE = os.path.join("fixtures", "regression.json")

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

_LOGGING_CONFIGURED = False


def setup_logging(verbose: int = 0) -> None:
    """
    Configure the root logger once.

    Args:
        verbose: 0 for WARNING, 1 for INFO, 2 or more for DEBUG.
    """
    global _LOGGING_CONFIGURED
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    if _LOGGING_CONFIGURED:
        logging.getLogger().setLevel(level)
        return
    logging.basicConfig(level=level, format=LOG_FORMAT)
    _LOGGING_CONFIGURED = True


def resource_path(relative_path: str) -> str:
    """
    Get absolute path to a file shipped with the package.

    Args:
        relative_path: Path relative to the repository root.

    Returns:
        str: The absolute path.
    """
    base_path = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(base_path, relative_path)


def ensure_dir(path: str) -> str:
    """
    Ensure a directory exists, creating it if necessary.

    Args:
        path: The directory path to ensure exists.

    Returns:
        str: The path that was ensured.
    """
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def load_fixtures(path: Optional[str] = None) -> Dict[str, Dict[str, Any]]:
    """
    Load the regression fixture table.

    Returns:
        dict: Fixture name -> {"value", "tolerance", "oracle"}; empty if the
            file does not exist.
    """
    path = path or resource_path(FIXTURE_FILE)
    if not os.path.exists(path):
        _logger.warning("Fixture file %s not found", path)
        return {}
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f).get("values", {})


def fixture_value(name: str, path: Optional[str] = None) -> Optional[Dict[str, Any]]:
    """
    Get one frozen fixture.

    Returns:
        dict or None: The fixture entry, or None when it is missing or not yet frozen.
    """
    entry = load_fixtures(path).get(name)
    if not entry or entry.get("value") is None:
        return None
    return entry


def save_fixtures(values: Dict[str, Dict[str, Any]], path: Optional[str] = None) -> str:
    """
    Merge fixture entries into the fixture file.

    Args:
        values: Fixture name -> entry.
        path: Target file; defaults to the shipped fixture file.

    Returns:
        str: The path written.
    """
    path = path or resource_path(FIXTURE_FILE)
    current = load_fixtures(path) if os.path.exists(path) else {}
    current.update(values)
    ensure_dir(os.path.dirname(path))
    with open(path, 'w', encoding='utf-8') as f:
        json.dump({"schema": 1, "values": current}, f, indent=2, ensure_ascii=False)
    _logger.info("Wrote %d fixtures to %s", len(values), path)
    return path

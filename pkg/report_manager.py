"""
Report Manager Module - Data model for experiment reports.
Handles report state, verdicts and persistence with JSON serialization.
"""

import json
import logging
import math
import os
import time
from dataclasses import asdict, dataclass
from datetime import datetime
from typing import Any, Dict, List, Optional

import numpy as np

_logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def to_jsonable(value: Any) -> Any:
    """
    Convert numpy scalars/arrays and complex numbers into JSON-compatible values.

    Complex numbers become [re, im]; non-finite floats become strings so the
    document stays valid JSON.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


@dataclass
class Verdict:
    """
    One asserted inequality or identity.

    Attributes:
        name: What is checked.
        passed: Outcome.
        value: Observed quantity.
        bound: Quantity it is compared against.
        tolerance: Tolerance taken from the run's config.
        detail: Free-form context (trial number, N, ...).
    """
    name: str
    passed: bool
    value: Optional[float] = None
    bound: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""

    def to_dict(self) -> Dict:
        return to_jsonable(asdict(self))

    @classmethod
    def from_dict(cls, data: Dict) -> "Verdict":
        return cls(
            name=data["name"],
            passed=bool(data["passed"]),
            value=data.get("value"),
            bound=data.get("bound"),
            tolerance=data.get("tolerance"),
            detail=data.get("detail", ""),
        )


class ExperimentReport:
    """
    Data model for a single experiment run.

    Stores the config echo, per-row results, verdicts and the wall-clock
    duration of the run.
    """

    def __init__(self, command: str = "", config: Optional[Dict[str, Any]] = None):
        """
        Initialize an empty report.

        Args:
            command: Subcommand name.
            config: Config echo, stored verbatim.
        """
        self.schema = SCHEMA_VERSION
        self.command = command
        self.config: Dict[str, Any] = dict(config or {})
        self.rows: List[Dict[str, Any]] = []
        self.verdicts: List[Verdict] = []
        self.created_at = datetime.now().isoformat()
        self.duration_seconds = 0.0
        self.exported_files: Dict[str, str] = {}
        self._started = time.perf_counter()

    def add_row(self, **fields) -> Dict[str, Any]:
        """Append a result row."""
        row = to_jsonable(fields)
        self.rows.append(row)
        return row

    def add_verdict(self, name: str, passed: bool, value: Optional[float] = None,
                    bound: Optional[float] = None, tolerance: Optional[float] = None,
                    detail: str = "") -> Verdict:
        """Record a verdict; failures are logged at WARNING."""
        verdict = Verdict(name, bool(passed), value, bound, tolerance, detail)
        self.verdicts.append(verdict)
        if not verdict.passed:
            _logger.warning("Verdict failed: %s (value=%s, bound=%s, tol=%s) %s",
                            name, value, bound, tolerance, detail)
        return verdict

    def check_le(self, name: str, value: float, bound: float, tolerance: float = 0.0,
                 detail: str = "") -> Verdict:
        """Verdict value <= bound + tolerance."""
        return self.add_verdict(name, value <= bound + tolerance, value, bound, tolerance, detail)

    def check_close(self, name: str, value: float, target: float, tolerance: float,
                    detail: str = "") -> Verdict:
        """Verdict |value - target| <= tolerance."""
        return self.add_verdict(name, abs(value - target) <= tolerance, value, target, tolerance, detail)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failed_verdicts(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.passed]

    def finish(self) -> "ExperimentReport":
        """Stamp the wall-clock duration."""
        self.duration_seconds = time.perf_counter() - self._started
        return self

    def exit_code(self) -> int:
        """0 iff every verdict passed, 1 otherwise."""
        return 0 if self.passed else 1

    def add_exported_file(self, format_id: str, file_path: str) -> None:
        self.exported_files[format_id] = file_path

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert report to dictionary for serialization.

        Returns:
            dict: Report data as dictionary.
        """
        return {
            "schema": self.schema,
            "command": self.command,
            "config": to_jsonable(self.config),
            "rows": self.rows,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "passed": self.passed,
            "created_at": self.created_at,
            "duration_seconds": self.duration_seconds,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentReport":
        """
        Create report from dictionary.

        Args:
            data: Dictionary with report data.

        Returns:
            ExperimentReport: New report instance.
        """
        schema = data.get("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ValueError(f"Unsupported report schema: {schema}")
        report = cls(data.get("command", ""), data.get("config", {}))
        report.rows = list(data.get("rows", []))
        report.verdicts = [Verdict.from_dict(v) for v in data.get("verdicts", [])]
        report.created_at = data.get("created_at", report.created_at)
        report.duration_seconds = data.get("duration_seconds", 0.0)
        return report

    def save_to_json(self, filepath: str) -> bool:
        """
        Save report to JSON file.

        Args:
            filepath: Path to save the JSON file.

        Returns:
            bool: True if saved successfully.
        """
        try:
            parent = os.path.dirname(os.path.abspath(filepath))
            os.makedirs(parent, exist_ok=True)
            with open(filepath, 'w', encoding='utf-8') as f:
                json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
            return True
        except (IOError, OSError) as e:
            _logger.error("Failed to save report: %s", e)
            return False

    @classmethod
    def load_from_json(cls, filepath: str) -> Optional["ExperimentReport"]:
        """
        Load report from JSON file.

        Args:
            filepath: Path to the JSON file.

        Returns:
            ExperimentReport: Loaded report or None if failed.
        """
        try:
            if not os.path.exists(filepath):
                return None
            with open(filepath, 'r', encoding='utf-8') as f:
                data = json.load(f)
            return cls.from_dict(data)
        except (IOError, OSError, json.JSONDecodeError) as e:
            _logger.error("Failed to load report: %s", e)
            return None

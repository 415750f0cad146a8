"""
Export Base Module - Abstract base class for report exporters.
Provides common functionality for writing experiment reports to files.

Supported formats:
- JSON (json_exporter.py), the primary artifact of every run
- CSV (csv_exporter.py), the row table
- Markdown (markdown_exporter.py), a human-readable summary
"""

import logging
import os
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, List, Optional

_logger = logging.getLogger(__name__)


class ExporterBase(ABC):
    """
    Abstract base class for all report exporters.
    """

    # File extension for this exporter
    file_extension: str = ""

    # Display name for this format
    format_name: str = ""

    def __init__(self, report, output_path: Optional[str] = None):
        """
        Initialize the exporter with a report.

        Args:
            report: ExperimentReport to export.
            output_path: Optional output file path. If None, will be generated.
        """
        self.report = report
        self.output_path = output_path
        self.errors: List[str] = []

    @abstractmethod
    def export(self) -> str:
        """
        Export the report to the target format.

        Returns:
            str: Path to the exported file.

        Raises:
            ExportError: If export fails.
        """
        pass

    def validate_report(self) -> bool:
        """
        Validate that the report can be exported.

        Returns:
            bool: True if the report is valid for export.
        """
        if self.report is None:
            self.errors.append("No report provided")
            return False
        if not self.report.command:
            self.errors.append("Report has no command")
            return False
        return True

    def generate_output_path(self, directory: Optional[str] = None, stem: Optional[str] = None) -> str:
        """
        Generate an output file path.

        Args:
            directory: Optional directory path. Defaults to current directory.
            stem: Base name without extension; defaults to command and timestamp.

        Returns:
            str: Generated file path.
        """
        if self.output_path:
            return self.output_path
        if stem is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            stem = f"{self._sanitize_filename(self.report.command)}_{timestamp}"
        filename = f"{stem}.{self.file_extension}"
        if directory:
            return os.path.join(directory, filename)
        return filename

    def _sanitize_filename(self, name: str) -> str:
        """
        Sanitize a string for use as a filename.

        Args:
            name: The string to sanitize.

        Returns:
            str: Sanitized filename-safe string.
        """
        invalid_chars = '<>:"/\\|?* '
        result = name
        for char in invalid_chars:
            result = result.replace(char, '_')
        result = result[:50].strip('. ')
        return result if result else "report"

    def _prepare_target(self) -> str:
        """Validate the report and create the parent directory of the output path."""
        if not self.validate_report():
            raise ExportError("; ".join(self.errors))
        path = self.generate_output_path()
        parent = os.path.dirname(os.path.abspath(path))
        try:
            os.makedirs(parent, exist_ok=True)
        except OSError as e:
            raise ExportError(f"Cannot create output directory {parent}: {e}")
        return path

    def get_metadata(self) -> Dict[str, Any]:
        """
        Get report metadata for export.

        Returns:
            dict: Command, schema, verdict counts and timing.
        """
        failed = len(self.report.failed_verdicts())
        return {
            'command': self.report.command,
            'schema': self.report.schema,
            'created_at': self.report.created_at,
            'duration_seconds': self.report.duration_seconds,
            'verdicts': len(self.report.verdicts),
            'failed': failed,
            'passed': failed == 0,
        }


class ExportError(Exception):
    """Exception raised when export fails."""
    pass


class ExportManager:
    """
    Manager for handling multi-format exports.

    Coordinates exporting a report to multiple formats; all formats share
    the stem of the primary output path.
    """

    _exporters: Dict[str, type] = {}

    @classmethod
    def register_exporter(cls, format_id: str, exporter_class: type) -> None:
        """
        Register an exporter class for a format.

        Args:
            format_id: Unique identifier for the format (e.g., 'json', 'csv').
            exporter_class: The exporter class to register.
        """
        cls._exporters[format_id] = exporter_class

    @classmethod
    def get_exporter(cls, format_id: str) -> Optional[type]:
        """
        Get the exporter class for a format.

        Returns:
            The exporter class or None if not registered.
        """
        return cls._exporters.get(format_id)

    @classmethod
    def get_available_formats(cls) -> List[str]:
        """List of registered format identifiers."""
        return list(cls._exporters.keys())

    @classmethod
    def export_to_formats(cls, report, formats: List[str],
                          output_path: Optional[str] = None,
                          progress_callback=None) -> Dict[str, str]:
        """
        Export a report to multiple formats.

        Args:
            report: ExperimentReport to export.
            formats: List of format identifiers to export to.
            output_path: Primary output path; other formats reuse its stem.
            progress_callback: Optional callback(format, status, path) for progress.

        Returns:
            dict: Mapping of format_id to output file path.

        Raises:
            ExportError: If any export fails.
        """
        results = {}
        errors = []
        directory, stem = None, None
        if output_path:
            directory = os.path.dirname(output_path) or None
            stem = os.path.splitext(os.path.basename(output_path))[0]

        for format_id in formats:
            exporter_class = cls.get_exporter(format_id)
            if not exporter_class:
                errors.append(f"Unknown format: {format_id}")
                continue
            try:
                if progress_callback:
                    progress_callback(format_id, 'starting', None)
                exporter = exporter_class(report)
                exporter.output_path = exporter.generate_output_path(directory, stem)
                result_path = exporter.export()
                results[format_id] = result_path
                report.add_exported_file(format_id, result_path)
                if progress_callback:
                    progress_callback(format_id, 'complete', result_path)
            except Exception as e:
                errors.append(f"{format_id}: {str(e)}")
                if progress_callback:
                    progress_callback(format_id, 'error', str(e))

        if errors:
            raise ExportError("Export failed: " + "; ".join(errors))
        return results

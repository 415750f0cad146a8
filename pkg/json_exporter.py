"""
JSON Exporter Module - Export experiment reports as a single JSON document.
"""

import json

from export_base import ExporterBase, ExportError, ExportManager


class JsonExporter(ExporterBase):
    """Exporter for the versioned JSON report document."""

    file_extension = "json"
    format_name = "JSON"

    def export(self) -> str:
        """
        Export the report to JSON.

        Returns:
            str: Path to the exported file.

        Raises:
            ExportError: If export fails.
        """
        output_path = self._prepare_target()
        try:
            data = self.report.to_dict()
            data["exported_files"] = dict(self.report.exported_files)
            with open(output_path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2, ensure_ascii=False)
            return output_path
        except Exception as e:
            raise ExportError(f"Failed to export JSON: {str(e)}")


ExportManager.register_exporter('json', JsonExporter)

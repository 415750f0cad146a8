"""
CSV Exporter Module - Export the row table of an experiment report.
Columns are the union of row keys in first-seen order; list values are
written as JSON.
"""

import csv
import json

from export_base import ExporterBase, ExportError, ExportManager


class CsvExporter(ExporterBase):
    """Exporter for the per-row result table."""

    file_extension = "csv"
    format_name = "CSV"

    def export(self) -> str:
        """
        Export the report rows to CSV.

        Returns:
            str: Path to the exported file.

        Raises:
            ExportError: If export fails.
        """
        output_path = self._prepare_target()
        columns = []
        for row in self.report.rows:
            columns.extend(k for k in row if k not in columns)
        try:
            with open(output_path, 'w', newline='', encoding='utf-8') as f:
                writer = csv.DictWriter(f, fieldnames=columns)
                writer.writeheader()
                for row in self.report.rows:
                    writer.writerow({k: self._cell(row.get(k)) for k in columns})
            return output_path
        except Exception as e:
            raise ExportError(f"Failed to export CSV: {str(e)}")

    @staticmethod
    def _cell(value):
        if isinstance(value, (list, dict)):
            return json.dumps(value)
        return "" if value is None else value


ExportManager.register_exporter('csv', CsvExporter)

"""
Markdown Exporter Module - Export experiment reports to Markdown format.
Creates a summary with the config echo, the verdict table and the row table.
"""

import json

from export_base import ExporterBase, ExportError, ExportManager

# Row tables longer than this are truncated in the summary (CSV carries all rows)
MAX_TABLE_ROWS = 200


class MarkdownExporter(ExporterBase):
    """
    Exporter for Markdown format.

    Creates Markdown documents with:
    - Title and metadata header
    - Config echo
    - Verdict table
    - Result table
    """

    file_extension = "md"
    format_name = "Markdown"

    def export(self) -> str:
        """
        Export the report to Markdown format.

        Returns:
            str: Path to the exported Markdown file.

        Raises:
            ExportError: If export fails.
        """
        output_path = self._prepare_target()
        try:
            with open(output_path, 'w', encoding='utf-8') as f:
                f.write(self._build_markdown())
            return output_path
        except Exception as e:
            raise ExportError(f"Failed to export Markdown: {str(e)}")

    def _build_markdown(self) -> str:
        sections = [
            self._build_header(),
            self._build_config(),
            self._build_verdicts(),
            self._build_rows(),
        ]
        return '\n\n'.join(s for s in sections if s) + '\n'

    def _build_header(self) -> str:
        """Build the document header with title and metadata."""
        meta = self.get_metadata()
        status = "PASS" if meta['passed'] else "FAIL"
        lines = [
            f"# {meta['command']}: {status}",
            "",
            f"**Schema:** {meta['schema']}",
            f"**Created:** {meta['created_at']}",
            f"**Duration:** {meta['duration_seconds']:.3f} s",
            f"**Verdicts:** {meta['verdicts'] - meta['failed']}/{meta['verdicts']} passed",
        ]
        return '\n'.join(lines)

    def _build_config(self) -> str:
        return "## Config\n\n```json\n" + json.dumps(self.report.config, indent=2, ensure_ascii=False) + "\n```"

    def _build_verdicts(self) -> str:
        if not self.report.verdicts:
            return ""
        lines = ["## Verdicts", "", "| check | passed | value | bound | tol | detail |", "|---|---|---|---|---|---|"]
        for v in self.report.verdicts:
            lines.append(
                f"| {v.name} | {'yes' if v.passed else 'NO'} | {self._cell(v.value)} | "
                f"{self._cell(v.bound)} | {self._cell(v.tolerance)} | {v.detail} |"
            )
        return '\n'.join(lines)

    def _build_rows(self) -> str:
        rows = self.report.rows
        if not rows:
            return ""
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
        lines = ["## Results", "", "| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        for row in rows[:MAX_TABLE_ROWS]:
            lines.append("| " + " | ".join(self._cell(row.get(c)) for c in columns) + " |")
        if len(rows) > MAX_TABLE_ROWS:
            lines.append("")
            lines.append(f"*{len(rows) - MAX_TABLE_ROWS} more rows in the CSV export*")
        return '\n'.join(lines)

    @staticmethod
    def _cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, float):
            return f"{value:.12g}"
        return str(value)


ExportManager.register_exporter('markdown', MarkdownExporter)

"""Rich rendering of comparison reports."""

import io
from pathlib import Path

from rich.console import Console
from rich.table import Table

from friction_pinn.models.experiment import ComparisonReport, ComparisonRow

REPORT_WIDTH = 200


def _validity(row: ComparisonRow) -> str:
    if row.failure is not None:
        return "failed"
    if row.is_oracle:
        return "oracle"
    if row.valid is None:
        return "-"
    return "yes" if row.valid else "×"


def _cell(row: ComparisonRow, quantity: str) -> str:
    if quantity not in row.rms:
        return "-"
    value = f"{row.rms[quantity]:.6g}"
    error = row.errors.get(quantity)
    if row.valid is False:
        return f"{value} (×)"
    if error is None:
        return value
    return f"{value} ({error:.2f}%)"


def report_table(report: ComparisonReport) -> Table:
    """Table of RMS values with relative errors; invalid runs show a cross."""
    table = Table(title=f"RMS comparison: {report.experiment}")
    table.add_column("Method", no_wrap=True)
    table.add_column("Valid")
    for quantity in report.quantities:
        table.add_column(quantity, justify="right")
    table.add_column("Peaks (Hz)")

    for row in report.rows:
        peaks = ", ".join(f"{f:.4g}" for f, _ in row.peaks[:3])
        cells = [_cell(row, q) for q in report.quantities]
        table.add_row(row.label, _validity(row), *cells, peaks)
    return table


def report_text(report: ComparisonReport) -> str:
    """Plain-text rendering with a fixed width and no colour codes."""
    console = Console(
        file=io.StringIO(), record=True, width=REPORT_WIDTH, color_system=None, highlight=False
    )
    console.print(report_table(report))
    failures = [row for row in report.rows if row.failure is not None]
    for row in failures:
        console.print(f"{row.label}: {row.failure}")
    return console.export_text()


def write_report(report: ComparisonReport, directory: Path) -> tuple[Path, Path]:
    """Write ``report.txt`` and its ``report.json`` sidecar."""
    directory.mkdir(parents=True, exist_ok=True)
    text_path = directory / "report.txt"
    json_path = directory / "report.json"
    text_path.write_text(report_text(report), encoding="utf-8")
    json_path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return text_path, json_path

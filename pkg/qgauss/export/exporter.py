"""CSV and JSON writers for sweep tables, spectra and certificates."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Literal, Mapping, Sequence, TextIO

from ..spectra import SpectrumEstimate, SweepRow

ExportFormat = Literal["csv", "json"]

SWEEP_COLUMNS = ("q", "lower", "upper", "direct_upper", "n_used", "level_used")


def format_number(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(float(value), ".17g")


def _render_json(value: Any, depth: int = 0) -> str:
    """json.dumps(indent=2) layout, with floats written by ``format_number``."""
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Out of range float values are not JSON compliant: {value!r}")
        return format_number(value)
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        inner = "  " * (depth + 1)
        items = [f"{inner}{json.dumps(str(key))}: {_render_json(item, depth + 1)}" for key, item in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = "  " * (depth + 1)
        items = [inner + _render_json(item, depth + 1) for item in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(value)


class Exporter:
    """Writes documents to a file when a path is given, otherwise to ``stream``."""

    def __init__(self, stream: TextIO | None = None) -> None:
        self.stream = stream

    def write(self, text: str, path: str | Path | None = None) -> Path | None:
        if path is None:
            (self.stream or sys.stdout).write(text)
            return None
        destination = Path(path)
        destination.parent.mkdir(parents=True, exist_ok=True)
        destination.write_text(text, encoding="utf-8")
        return destination

    def sweep_table(self, rows: Sequence[SweepRow]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    format_number(row.q),
                    format_number(row.lower),
                    format_number(row.upper),
                    format_number(row.direct_upper),
                    str(row.n_used),
                    str(row.level_used),
                ]
            )
        return buffer.getvalue()

    def spectrum_table(self, estimate: SpectrumEstimate) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["eigenvalue"])
        for value in estimate.eigenvalues:
            writer.writerow([format_number(value)])
        return buffer.getvalue()

    def json_document(self, document: Mapping[str, Any] | Sequence[Any]) -> str:
        return _render_json(document) + "\n"

    def export_sweep(self, rows: Sequence[SweepRow], path: str | Path | None = None) -> Path | None:
        return self.write(self.sweep_table(rows), path)

    def export_spectrum(
        self,
        estimate: SpectrumEstimate,
        *,
        format: ExportFormat = "json",
        path: str | Path | None = None,
    ) -> Path | None:
        if format == "json":
            return self.write(self.json_document(estimate.to_document()), path)
        if format == "csv":
            return self.write(self.spectrum_table(estimate), path)
        raise ValueError(f"Unsupported export format: {format}")

    def export_json(self, document: Mapping[str, Any] | Sequence[Any], path: str | Path | None = None) -> Path | None:
        return self.write(self.json_document(document), path)

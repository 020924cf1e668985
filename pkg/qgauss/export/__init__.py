from .exporter import SWEEP_COLUMNS, ExportFormat, Exporter, format_number

__all__ = ["SWEEP_COLUMNS", "ExportFormat", "Exporter", "format_number"]

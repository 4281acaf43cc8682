# Result tables with their configuration hash, written as CSV or YAML.

from .models import REALIZES_COLUMN, TableReport, canonical_json, config_hash
from .writers import format_cell, render_csv, render_structured, write_csv, write_report, write_structured

__all__ = [
    "REALIZES_COLUMN",
    "TableReport",
    "canonical_json",
    "config_hash",
    "format_cell",
    "render_csv",
    "render_structured",
    "write_csv",
    "write_structured",
    "write_report",
]

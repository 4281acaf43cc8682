import csv
import io
import logging
import os
from typing import Any, TextIO, Union

import numpy as np
import yaml

from .models import TableReport

logger = logging.getLogger(__name__)

Destination = Union[str, os.PathLike, TextIO]


def format_cell(value: Any) -> str:
    """Text of one CSV cell; floats use repr so that the output round-trips exactly."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, complex):
        return f"{value.real!r},{value.imag!r}" if value.imag else repr(value.real)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _emit(text: str, destination: Destination) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    directory = os.path.dirname(os.fspath(destination))
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(destination, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("Wrote %s", destination)


def render_csv(report: TableReport) -> str:
    buffer = io.StringIO()
    buffer.write(f"# table: {report.name}\n")
    buffer.write(f"# config_hash: {report.config_hash}\n")
    for key in sorted(report.tolerances):
        buffer.write(f"# {key}: {report.tolerances[key]!r}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([format_cell(row[column]) for column in report.columns])
    return buffer.getvalue()


def render_structured(report: TableReport) -> str:
    document = {
        "table": report.name,
        "config_hash": report.config_hash,
        "config": _plain(report.config),
        "tolerances": _plain(report.tolerances),
        "columns": list(report.columns),
        "rows": [[_plain(row[column]) for column in report.columns] for row in report.rows],
    }
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def write_csv(report: TableReport, destination: Destination) -> None:
    """
    Writes the table as CSV after a ``# key: value`` header block
    (table name, config hash, tolerances). Complex cells are written as "re,im".
    """
    _emit(render_csv(report), destination)


def write_structured(report: TableReport, destination: Destination) -> None:
    """Writes the same table as a YAML document."""
    _emit(render_structured(report), destination)


def write_report(report: TableReport, destination: Destination, fmt: str = "csv") -> None:
    if fmt == "csv":
        write_csv(report, destination)
    elif fmt == "yaml":
        write_structured(report, destination)
    else:
        raise ValueError(f"Unknown output format '{fmt}'.")

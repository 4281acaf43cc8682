from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence

import typer
from pydantic import BaseModel, ConfigDict
from typing_extensions import Annotated

from momentlab_engine.core import load_app_config
from momentlab_engine.numerics import QuadratureSpec
from momentlab_engine.reporting import TableReport, render_csv, render_structured, write_report


class OutputFormat(str, Enum):
    CSV = "csv"
    YAML = "yaml"


class CliState(BaseModel):
    """Options of the top-level callback, passed to commands through ``ctx.obj``."""
    model_config = ConfigDict(frozen=True)

    workers: int = 1
    deterministic: bool = True


OutputOption = Annotated[
    Optional[Path],
    typer.Option("--out", "-o", help="Write the table to this file instead of stdout.", dir_okay=False),
]
FormatOption = Annotated[
    Optional[OutputFormat],
    typer.Option("--format", "-f", help="csv or yaml (structured text); configuration default when omitted."),
]
TolOption = Annotated[
    Optional[float],
    typer.Option("--tol", help="Relative quadrature tolerance.", min=1e-15, max=1e-2),
]


def state_from(ctx: typer.Context) -> CliState:
    return ctx.obj if isinstance(ctx.obj, CliState) else CliState(workers=load_app_config().execution.workers)


def quadrature_spec(tol: Optional[float]) -> QuadratureSpec:
    spec = QuadratureSpec.from_config()
    return spec if tol is None else spec.model_copy(update={"rel_tol": tol})


def emit_table(
    name: str,
    columns: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
    config: Dict[str, Any],
    fmt: Optional[OutputFormat],
    out: Optional[Path],
    spec: Optional[QuadratureSpec] = None,
) -> TableReport:
    """Builds the table report and writes it to ``out`` or stdout in the requested format."""
    spec = spec or QuadratureSpec.from_config()
    tolerances = {"rel_tol": spec.rel_tol, "abs_tol": spec.abs_tol}
    report = TableReport.build(name, columns, rows, config={"command": name, **config}, tolerances=tolerances)
    chosen = (fmt.value if fmt is not None else load_app_config().output.format)
    if out is not None:
        write_report(report, out, chosen)
    else:
        typer.echo(render_csv(report) if chosen == "csv" else render_structured(report), nl=False)
    return report

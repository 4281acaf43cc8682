import json
from typing import Optional

import typer
from typing_extensions import Annotated

from momentlab_engine.core import CheckFailure
from momentlab_engine.verification import run_acceptance_suite

from ..utils import FormatOption, OutputOption, emit_table, guarded, state_from


@guarded
def verify(
    ctx: typer.Context,
    only: Annotated[
        Optional[str],
        typer.Option("--only", help="Comma-separated criterion identifiers; all criteria when omitted."),
    ] = None,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Run the acceptance criteria and tabulate what each one measured.

    Exit status 1 when any criterion fails. Runtimes are tabulated with --no-deterministic.
    """
    state = state_from(ctx)
    selection = [item.strip() for item in only.split(",") if item.strip()] if only else None
    report = run_acceptance_suite(selection, workers=state.workers)
    rows = [
        {
            "identifier": result.identifier,
            "passed": result.passed,
            "measured": json.dumps(result.measured, sort_keys=True),
            "threshold": json.dumps(result.threshold, sort_keys=True),
            "error": result.error,
            "realizes": f"verification.{result.identifier}",
        }
        for result in report.results
    ]
    columns = ["identifier", "passed", "measured", "threshold", "error", "realizes"]
    if not state.deterministic:
        # Runtimes differ between runs, so they only appear on request.
        columns.insert(4, "runtime_seconds")
        for row, result in zip(rows, report.results):
            row["runtime_seconds"] = round(result.runtime_seconds, 3)
    emit_table("verify", columns, rows, {"selection": selection or "all"}, fmt, out)
    if not report.passed:
        raise CheckFailure("verification", float(len(report.failed)), 0.0, f"failed criteria: {', '.join(report.failed)}")

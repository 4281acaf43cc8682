from typing import Optional

import typer
from typing_extensions import Annotated

from momentlab_engine.fields import character_lattice, kappa_chi, moment_budget, resolve_field

from ..utils import FormatOption, OutputOption, emit_table, guarded, parse_grid


@guarded
def characters(
    field: Annotated[str, typer.Option("--field", help="Built-in field (Q, Q_i, Q_sqrt2) or a field file.")] = "Q",
    bound: Annotated[float, typer.Option("--bound", help="max(|t_v|, |ell_v|) of the enumerated characters.", min=0.0, max=1e4)] = 20.0,
    t_grid: Annotated[Optional[str], typer.Option("--t-grid", help="Tabulate kappa_chi(t) on this grid instead of listing.")] = None,
    budget_T: Annotated[Optional[float], typer.Option("--T", help="Summarise the moment budget at this T instead.", min=1.0 + 1e-12)] = None,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    List the unramified Hecke characters of a field, their kappa_chi tables, or the moment budget at T.
    """
    number_field = resolve_field(field)
    config = {"field": number_field.name, "bound": bound}
    if budget_T is not None:
        budget = moment_budget(number_field, budget_T, keep_details=True)
        rows = [
            {
                "label": entry.character.label or "",
                "t_values": list(entry.character.t_values),
                "ell_values": list(entry.character.ell_values),
                "measure": entry.measure,
                "realizes": "fields.moment_budget",
            }
            for entry in budget.per_character
        ]
        config.update(T=budget_T, total_measure=budget.total_measure)
        emit_table("characters.budget", ["label", "t_values", "ell_values", "measure", "realizes"], rows, config, fmt, out)
        return

    chars = character_lattice(number_field, bound)
    if t_grid is None:
        rows = [
            {
                "index": index,
                "label": chi.label or "",
                "t_values": list(chi.t_values),
                "ell_values": list(chi.ell_values),
                "realizes": "fields.character_lattice",
            }
            for index, chi in enumerate(chars)
        ]
        emit_table("characters.lattice", ["index", "label", "t_values", "ell_values", "realizes"], rows, config, fmt, out)
        return

    heights = parse_grid(t_grid, "--t-grid")
    rows = [
        {"index": index, "t": t, "kappa": float(kappa_chi(number_field, chi, t)), "realizes": "fields.kappa_chi"}
        for index, chi in enumerate(chars)
        for t in heights
    ]
    config["t_grid"] = heights
    emit_table("characters.kappa", ["index", "t", "kappa", "realizes"], rows, config, fmt, out)

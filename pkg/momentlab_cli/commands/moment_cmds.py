from enum import Enum

import typer
from typing_extensions import Annotated

from momentlab_engine.core import CheckFailure, DomainError
from momentlab_engine.fields import HeckeCharacter, character_lattice, resolve_field
from momentlab_engine.kernels import LocalCharacterParams, MeasureConvention
from momentlab_engine.moments import (
    critical_line_integrals,
    fit_fourth_moment,
    fit_second_moment,
    landau_positivity_probe,
    second_moment_main_term,
    smoothing_weight_table,
    WeightSpec,
)

from ..utils import FormatOption, OutputOption, TolOption, emit_table, guarded, parse_grid, quadrature_spec, state_from


class MomentKind(str, Enum):
    ZETA = "zeta"
    WEIGHTS = "weights"
    POSITIVITY = "positivity"


def _pick_character(field_source: str, index: int) -> tuple:
    field = resolve_field(field_source)
    if index == 0:
        return field, HeckeCharacter.trivial(field)
    chars = [chi for chi in character_lattice(field, 50.0) if not chi.is_trivial]
    index -= 1
    if index >= len(chars):
        raise DomainError(f"Character index {index + 1} exceeds the {len(chars)} nontrivial characters with parameters up to 50.")
    return field, chars[index]


@guarded
def moment(
    ctx: typer.Context,
    kind: Annotated[MomentKind, typer.Option("--kind", help="zeta moments, smoothing weights or the positivity probe.")] = MomentKind.ZETA,
    T_grid: Annotated[str, typer.Option("--T-grid", help="Heights of the zeta moments.")] = "500,1000,2000,4000",
    rel_tol: Annotated[float, typer.Option("--moment-tol", help="Agreement between refinements of the zeta integrals.", min=1e-10, max=1e-2)] = 1e-4,
    field: Annotated[str, typer.Option("--field", help="Built-in field or field file (weights).")] = "Q_i",
    character: Annotated[int, typer.Option("--character", help="Index of the character, 0 = trivial.", min=0)] = 0,
    T: Annotated[float, typer.Option("--T", help="Smoothing height T (weights).", min=1.0 + 1e-12, max=1e12)] = 100.0,
    t_grid: Annotated[str, typer.Option("--t-grid", help="Spectral heights t (weights, positivity).")] = "0:10:1",
    mu: Annotated[float, typer.Option("--mu", help="Real spectral parameter.", min=-1000.0, max=1000.0)] = 0.1,
    w: Annotated[float, typer.Option("--w", help="Weight exponent of the positivity probe.", min=1.0 + 1e-12, max=50.0)] = 2.0,
    ell: Annotated[int, typer.Option("--ell", help="Character frequency of the positivity probe.", min=-1000, max=1000)] = 0,
    contour: Annotated[float, typer.Option("--contour", help="Re w of the weight contour.", min=1.0 + 1e-12, max=20.0)] = 2.0,
    convention: Annotated[MeasureConvention, typer.Option("--convention")] = MeasureConvention.DISPLAYED,
    tol: TolOption = None,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Moment experiments: second and fourth moments of zeta with their fits, smoothing weights
    M_{chi,T}(t), and positivity of the exact complex-place kernel.
    """
    state = state_from(ctx)
    if kind == MomentKind.ZETA:
        heights = parse_grid(T_grid, "--T-grid")
        integrals = critical_line_integrals(heights, (2, 4), rel_tol, state.workers)
        config = {"T_grid": integrals.T_grid, "moment_tol": rel_tol, "panel_width": integrals.panel_width}
        if len(integrals.T_grid) >= 2 and min(integrals.T_grid) >= 10.0:
            second = fit_second_moment(integrals.T_grid, integrals, rel_tol, state.workers)
            fourth = fit_fourth_moment(integrals.T_grid, integrals, rel_tol, state.workers)
            config.update(
                second_moment_slope=second.leading_coefficient, second_moment_residual=second.residuals,
                fourth_moment_leading=fourth.leading_coefficient, fourth_moment_residual=fourth.residuals,
            )
        main_terms = second_moment_main_term(integrals.T_grid)
        rows = [
            {
                "T": T_value, "power": power, "integral": integrals.values[power][i],
                "main_term": float(main_terms[i]) if power == 2 else "", "realizes": f"moments.zeta_{power}",
            }
            for power in (2, 4)
            for i, T_value in enumerate(integrals.T_grid)
        ]
        emit_table("moment.zeta", ["T", "power", "integral", "main_term", "realizes"], rows, config, fmt, out)
        return

    spec = quadrature_spec(tol)
    heights = parse_grid(t_grid, "--t-grid")
    if kind == MomentKind.WEIGHTS:
        number_field, chi = _pick_character(field, character)
        weight_spec = WeightSpec(T=T, contour_re=contour, convention=convention)
        table = smoothing_weight_table(number_field, chi, mu, heights, weight_spec, spec, state.workers)
        rows = [{"t": r.t, "kappa": r.kappa, "weight": r.weight, "realizes": "moments.smoothing_weight"} for r in table]
        config = {
            "field": number_field.name, "character": list(chi.t_values) + list(chi.ell_values),
            "T": T, "mu": mu, "contour": contour, "convention": convention.value, "t_grid": heights,
        }
        emit_table("moment.weights", ["t", "kappa", "weight", "realizes"], rows, config, fmt, out, spec)
        return

    report = landau_positivity_probe(w, mu, LocalCharacterParams(ell_nu=ell), heights, spec, state.workers)
    rows = [
        {
            "t": r.t, "value": r.value, "error_estimate": r.error_estimate,
            "nonnegative": r.nonnegative, "realizes": "moments.landau_positivity",
        }
        for r in report.rows
    ]
    config = {"w": w, "mu": mu, "ell": ell, "t_grid": heights}
    emit_table("moment.positivity", ["t", "value", "error_estimate", "nonnegative", "realizes"], rows, config, fmt, out, spec)
    if not report.all_nonnegative:
        raise CheckFailure("moments.landau_positivity", report.worst_relative, 0.0, "negative kernel value on the grid.")

import logging
from enum import Enum

import typer
from typing_extensions import Annotated

from momentlab_engine.core import ordered_map
from momentlab_engine.fields import PlaceType
from momentlab_engine.kernels import (
    LocalCharacterParams,
    MeasureConvention,
    SpectralParams,
    g_complex,
    g_real,
    k_asym_main,
    k_exact_complex,
    k_exact_real,
)

from ..utils import (
    FormatOption,
    OutputOption,
    TolOption,
    emit_table,
    guarded,
    parse_complex,
    parse_grid,
    quadrature_spec,
    state_from,
)

logger = logging.getLogger(__name__)


class PlaceChoice(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


@guarded
def kernel(
    ctx: typer.Context,
    place: Annotated[PlaceChoice, typer.Option("--place", help="Archimedean place type.")] = PlaceChoice.COMPLEX,
    t_grid: Annotated[str, typer.Option("--t-grid", "--t", help="Heights t as min:max:step, min..max or a list.")] = "0:20:1",
    v: Annotated[str, typer.Option("--v", help="Twist exponent v as 're,im'.")] = "0",
    w: Annotated[str, typer.Option("--w", help="Weight exponent w as 're,im'.")] = "2",
    mu: Annotated[float, typer.Option("--mu", help="Real spectral parameter (mu1 = mu2).", min=-1000.0, max=1000.0)] = 0.1,
    ell: Annotated[int, typer.Option("--ell", help="Character frequency at a complex place.", min=-1000, max=1000)] = 0,
    t_nu: Annotated[float, typer.Option("--t-nu", help="Character shift t_nu.", min=-1000.0, max=1000.0)] = 0.0,
    exact: Annotated[bool, typer.Option("--exact/--no-exact", help="Also evaluate the positive integral representation.")] = False,
    convention: Annotated[MeasureConvention, typer.Option("--convention", help="Normalisation of the complex main term.")] = MeasureConvention.DISPLAYED,
    tol: TolOption = None,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Tabulate the gamma-ratio kernel at s = 1/2 + it, its main term and optionally the exact kernel.
    """
    state = state_from(ctx)
    heights = parse_grid(t_grid, "--t-grid")
    v_value, w_value = parse_complex(v, "--v"), parse_complex(w, "--w")
    place_type = PlaceType(place.value)
    chi = LocalCharacterParams(t_nu=t_nu, ell_nu=ell if place_type == PlaceType.COMPLEX else 0)
    spectral = SpectralParams.diagonal(mu)
    spec = quadrature_spec(tol)
    g = g_real if place_type == PlaceType.REAL else g_complex
    realizes = f"kernel.g_{place_type.value}+kernel.k_asym_main"

    def row(t: float) -> dict:
        entry = {
            "t": t,
            "g": g(complex(0.5, t), v_value, w_value),
            "main_term": k_asym_main(place_type, t, v_value, w_value, chi, spectral, convention).value,
        }
        if exact:
            integral = k_exact_complex if place_type == PlaceType.COMPLEX else k_exact_real
            result = integral(t, w_value, chi, mu, spec)
            entry.update(exact=result.value, exact_error=result.error_estimate)
        entry["realizes"] = realizes + ("+kernel.k_exact" if exact else "")
        return entry

    logger.info("Tabulating the %s-place kernel at %d heights", place_type.value, len(heights))
    rows = ordered_map(row, heights, state.workers)
    columns = ["t", "g", "main_term"] + (["exact", "exact_error"] if exact else []) + ["realizes"]
    config = {
        "place": place_type.value, "t_grid": heights, "v": v_value, "w": w_value, "mu": mu,
        "ell": chi.ell_nu, "t_nu": t_nu, "exact": exact, "convention": convention.value,
    }
    emit_table(f"kernel.{place_type.value}", columns, rows, config, fmt, out, spec)

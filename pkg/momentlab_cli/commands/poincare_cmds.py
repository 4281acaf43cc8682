from enum import Enum

import typer
from typing_extensions import Annotated

from momentlab_engine.core import CheckFailure
from momentlab_engine.poincare import SeriesTruncation, cauchy_convergence_probe, domination_check

from ..utils import FormatOption, OutputOption, emit_table, guarded, parse_complex, parse_grid, parse_int_list, state_from


class Probe(str, Enum):
    CAUCHY = "cauchy"
    DOMINATION = "domination"


@guarded
def poincare(
    ctx: typer.Context,
    probe: Annotated[Probe, typer.Option("--probe", help="cauchy: partial-sum ladder; domination: ratio to Eisenstein sums.")] = Probe.CAUCHY,
    z: Annotated[str, typer.Option("--z", help="Point of the upper half-plane, 'x,y' (cauchy probe).")] = "0.2,1.3",
    v: Annotated[str, typer.Option("--v", help="Twist exponent, 're,im'.")] = "2.5",
    w: Annotated[float, typer.Option("--w", help="Real seed exponent.", min=1.0 + 1e-12, max=50.0)] = 2.5,
    ladder: Annotated[str, typer.Option("--ladder", help="Coprime bounds N of the cauchy probe.")] = "50,100,200,400",
    x_grid: Annotated[str, typer.Option("--x-grid", help="Real parts of the domination grid.")] = "0,0.25,0.5",
    y_grid: Annotated[str, typer.Option("--y-grid", help="Imaginary parts of the domination grid.")] = "0.5,1,2,5,10,100",
    epsilon: Annotated[float, typer.Option("--epsilon", help="Exponent gap of the dominating sum.", min=0.0, max=5.0)] = 0.25,
    bound: Annotated[int, typer.Option("--bound", help="Coprime bound of the domination probe.", min=1, max=2000)] = 60,
    allow_divergent: Annotated[bool, typer.Option("--allow-divergent", help="Probe Re v <= 1 without raising.")] = False,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Convergence and domination probes of the Poincare series over Q.

    Exit status 1 when the cauchy probe does not settle inside the convergence region.
    """
    state = state_from(ctx)
    v_value = parse_complex(v, "--v")
    if probe == Probe.CAUCHY:
        point = parse_complex(z, "--z")
        report = cauchy_convergence_probe(
            point, v_value, w, parse_int_list(ladder, "--ladder"),
            enforce_region=not allow_divergent, workers=state.workers,
        )
        rows = [
            {
                "N": row.coprime_bound, "value": row.value, "increment": row.increment,
                "tail_estimate": row.tail_estimate, "realizes": "poincare.partial_sum",
            }
            for row in report.rows
        ]
        config = {"z": point, "v": v_value, "w": w, "ladder": ladder, "converged": report.converged}
        emit_table("poincare.cauchy", ["N", "value", "increment", "tail_estimate", "realizes"], rows, config, fmt, out)
        if not report.converged and not allow_divergent:
            raise CheckFailure("poincare.cauchy", report.final_relative_increment, None, "partial sums did not settle.")
        return

    points = [complex(x, y) for x in parse_grid(x_grid, "--x-grid") for y in parse_grid(y_grid, "--y-grid")]
    report = domination_check(points, v_value.real, w, epsilon, SeriesTruncation(coprime_bound=bound), workers=state.workers)
    rows = [
        {
            "x": row.x, "y": row.y, "poincare": row.poincare, "eisenstein_sum": row.eisenstein_sum,
            "ratio": row.ratio, "realizes": "poincare.domination",
        }
        for row in report.rows
    ]
    config = {"v": v_value.real, "w": w, "epsilon": epsilon, "bound": bound, "constant": report.constant}
    emit_table("poincare.domination", ["x", "y", "poincare", "eisenstein_sum", "ratio", "realizes"], rows, config, fmt, out)

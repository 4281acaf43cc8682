import typer
from typing_extensions import Annotated

from momentlab_engine.whittaker import (
    DifferentData,
    LocalCharacter,
    LocalSatakeData,
    finite_mellin_whittaker,
    gl2_local_l_factor,
    hecke_local_integral,
    tate_brute_force_mellin,
)

from ..utils import FormatOption, OutputOption, TolOption, emit_table, guarded, parse_complex, parse_grid, quadrature_spec


@guarded
def whittaker(
    q: Annotated[int, typer.Option("--q", help="Residue field size.", min=2, max=10**6)] = 2,
    delta: Annotated[int, typer.Option("--delta", help="Valuation of the local different.", min=0, max=60)] = 0,
    chi: Annotated[str, typer.Option("--chi", help="Character value at the uniformizer, 're,im'.")] = "1",
    alpha: Annotated[str, typer.Option("--alpha", help="First Satake parameter, 're,im'.")] = "1",
    beta: Annotated[str, typer.Option("--beta", help="Second Satake parameter, 're,im'.")] = "1",
    sigma: Annotated[float, typer.Option("--sigma", help="Re s of the probed line.")] = 0.75,
    t_grid: Annotated[str, typer.Option("--t-grid", help="Im s values.")] = "0:5:1",
    v: Annotated[str, typer.Option("--v", help="Twist exponent v, 're,im'.")] = "1.5",
    tol: TolOption = None,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Cross-check the finite-place closed forms on the line Re s = sigma: the Mellin transform of the
    Eisenstein Whittaker function against its Tate sum, and the Hecke integral against its Euler factor.
    """
    spec = quadrature_spec(tol)
    character = LocalCharacter(value_at_uniformizer=parse_complex(chi, "--chi"))
    different = DifferentData(q=q, delta=delta)
    satake = LocalSatakeData(q=q, alpha=parse_complex(alpha, "--alpha"), beta=parse_complex(beta, "--beta"))
    v_value = parse_complex(v, "--v")
    rows = []
    for t in parse_grid(t_grid, "--t-grid"):
        s = complex(sigma, t)
        closed = finite_mellin_whittaker(character, q, different, s, v_value)
        oracle = tate_brute_force_mellin(character, q, different, s, v_value, spec=spec)
        rows.append({
            "t": t, "closed_form": closed, "series": oracle.value, "tail_bound": oracle.tail_bound,
            "gap": abs(closed - oracle.value), "realizes": "whittaker.finite_mellin",
        })
        euler = gl2_local_l_factor(satake, LocalCharacter.absolute_value_power(q, s))
        hecke = hecke_local_integral(satake, s, spec=spec)
        rows.append({
            "t": t, "closed_form": euler, "series": hecke.value, "tail_bound": hecke.tail_bound,
            "gap": abs(euler - hecke.value), "realizes": "whittaker.hecke_local_integral",
        })
    config = {"q": q, "delta": delta, "chi": chi, "alpha": alpha, "beta": beta, "sigma": sigma, "t_grid": t_grid, "v": v}
    emit_table("whittaker.local", ["t", "closed_form", "series", "tail_bound", "gap", "realizes"], rows, config, fmt, out, spec)

from enum import Enum

import typer
from typing_extensions import Annotated

from momentlab_engine.padic_norms import (
    BRUTE_FORCE_MAX_LEVEL,
    BRUTE_FORCE_PRIMES,
    LocalNormParams,
    brute_force_cell_count,
    cell_index,
    global_norm_product_check,
    local_norm_integral,
)

from ..utils import FormatOption, OutputOption, emit_table, guarded, parse_grid, parse_int_list


class NormTable(str, Enum):
    CELLS = "cells"
    LOCAL = "local"
    GLOBAL = "global"


@guarded
def norms(
    table: Annotated[NormTable, typer.Option("--table", help="cells, local integrals or the global Euler product.")] = NormTable.LOCAL,
    primes: Annotated[str, typer.Option("--primes", help="Primes q of the cell and local tables.")] = "2,3,5,7",
    max_level: Annotated[int, typer.Option("--max-level", help="Largest Cartan level of the cell table.", min=0, max=40)] = 3,
    sigma_grid: Annotated[str, typer.Option("--sigma-grid", help="Exponents sigma of the local table.")] = "1.5,2,3,5",
    a: Annotated[float, typer.Option("--a", help="Numerator exponent of the Euler product.", min=1.0 + 1e-12)] = 3.0,
    b: Annotated[float, typer.Option("--b", help="Denominator exponent of the Euler product.", min=1.0 + 1e-12)] = 3.0,
    prime_bound: Annotated[int, typer.Option("--prime-bound", help="Largest prime of the Euler product.", min=2, max=10**8)] = 100_000,
    out: OutputOption = None,
    fmt: FormatOption = None,
):
    """
    Norm-integral tables over PGL(2): Cartan cell counts, local integrals against their bound,
    and the truncated global Euler product against its zeta form.
    """
    if table == NormTable.CELLS:
        rows = []
        for p in parse_int_list(primes, "--primes"):
            for ell in range(max_level + 1):
                enumerable = p in BRUTE_FORCE_PRIMES and 1 <= ell <= BRUTE_FORCE_MAX_LEVEL
                rows.append({
                    "q": p, "level": ell, "cell_index": cell_index(p, ell),
                    "enumerated": brute_force_cell_count(p, ell) if enumerable else "",
                    "realizes": "padic_norms.cell_index",
                })
        config = {"primes": primes, "max_level": max_level}
        emit_table("norms.cells", ["q", "level", "cell_index", "enumerated", "realizes"], rows, config, fmt, out)
    elif table == NormTable.LOCAL:
        rows = []
        for q in parse_int_list(primes, "--primes"):
            for sigma in parse_grid(sigma_grid, "--sigma-grid"):
                result = local_norm_integral(LocalNormParams(q=q, sigma=sigma))
                rows.append({
                    "q": q, "sigma": sigma, "exact": result.exact, "bound": result.upper_bound,
                    "direct_sum": result.direct_sum, "realizes": "padic_norms.local_norm_integral",
                })
        config = {"primes": primes, "sigma_grid": sigma_grid}
        emit_table("norms.local", ["q", "sigma", "exact", "bound", "direct_sum", "realizes"], rows, config, fmt, out)
    else:
        check = global_norm_product_check(a, b, prime_bound)
        rows = [{
            "a": a, "b": b, "prime_bound": prime_bound, "primes": check.primes, "product": check.product,
            "zeta_form": check.zeta_form, "gap": check.gap, "realizes": "padic_norms.global_product",
        }]
        columns = ["a", "b", "prime_bound", "primes", "product", "zeta_form", "gap", "realizes"]
        emit_table("norms.global", columns, rows, {"a": a, "b": b, "prime_bound": prime_bound}, fmt, out)

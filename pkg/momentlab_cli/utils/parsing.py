import math
from typing import List

import numpy as np
import typer

# Points past the last full step are dropped when they overshoot max by more than this.
_GRID_SLACK = 1e-9
MAX_GRID_POINTS = 100_000


def parse_complex(text: str, name: str = "value") -> complex:
    """'re,im' or a plain real number."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            value = complex(float(parts[0]), 0.0)
        elif len(parts) == 2:
            value = complex(float(parts[0]), float(parts[1]))
        else:
            raise ValueError(text)
    except ValueError:
        raise typer.BadParameter(f"{name} must be 're' or 're,im', got '{text}'.") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise typer.BadParameter(f"{name} must be finite, got '{text}'.")
    return value


def parse_grid(text: str, name: str = "grid") -> List[float]:
    """
    'min:max:step' (inclusive of max when it lies on the grid), 'min..max' (unit step),
    or a comma-separated list of values.
    """
    text = text.strip()
    try:
        if ":" in text:
            lo, hi, step = (float(p) for p in text.split(":"))
        elif ".." in text:
            lo, hi = (float(p) for p in text.split(".."))
            step = 1.0
        else:
            return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise typer.BadParameter(f"{name} must be 'min:max:step', 'min..max' or a list, got '{text}'.") from None
    if step <= 0 or hi < lo or not all(math.isfinite(x) for x in (lo, hi, step)):
        raise typer.BadParameter(f"{name} needs min <= max and step > 0, got '{text}'.")
    count = int(math.floor((hi - lo) / step + _GRID_SLACK)) + 1
    if count > MAX_GRID_POINTS:
        raise typer.BadParameter(f"{name} has {count} points, more than {MAX_GRID_POINTS}.")
    return (lo + step * np.arange(count)).round(12).tolist()


def parse_int_list(text: str, name: str = "list") -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise typer.BadParameter(f"{name} must be a comma-separated list of integers, got '{text}'.") from None

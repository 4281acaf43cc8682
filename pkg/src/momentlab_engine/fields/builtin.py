import math
from typing import Dict

from ..core.exceptions import FieldDataException
from .models import NumberField

_LOG_SILVER = math.log(1.0 + math.sqrt(2.0))

BUILTIN_FIELDS: Dict[str, NumberField] = {
    "Q": NumberField(
        name="Q",
        r1=1,
        r2=0,
        abs_discriminant=1,
        unit_log_matrix=[],
        roots_of_unity=2,
        zeta_residue=1.0,
    ),
    "Q_i": NumberField(
        name="Q_i",
        r1=0,
        r2=1,
        abs_discriminant=4,
        unit_log_matrix=[],
        roots_of_unity=4,
        zeta_residue=math.pi / 4.0,  # 2 pi h / (w sqrt|D|)
        torsion_args=[1],
    ),
    "Q_sqrt2": NumberField(
        name="Q_sqrt2",
        r1=2,
        r2=0,
        abs_discriminant=8,
        unit_log_matrix=[[_LOG_SILVER, -_LOG_SILVER]],  # eps = 1 + sqrt 2, eps' = 1 - sqrt 2
        roots_of_unity=2,
        zeta_residue=_LOG_SILVER / math.sqrt(2.0),  # 2^{r1} h R / (w sqrt|D|)
    ),
}


def builtin_field(name: str) -> NumberField:
    """
    Returns one of the sample fields Q, Q_i, Q_sqrt2.

    Raises:
        FieldDataException: For an unknown name.
    """
    try:
        return BUILTIN_FIELDS[name]
    except KeyError:
        raise FieldDataException(name, f"unknown built-in field; choose one of {sorted(BUILTIN_FIELDS)}") from None

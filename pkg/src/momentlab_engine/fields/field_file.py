import json
import logging
import os

import yaml
from pydantic import ValidationError

from ..core.exceptions import FieldDataException
from .builtin import BUILTIN_FIELDS
from .models import NumberField

logger = logging.getLogger(__name__)

# Field description files (YAML or JSON):
#
#   name: Q_cbrt2
#   r1: 1
#   r2: 1
#   abs_discriminant: 108
#   unit_logs: [[-1.3473773, 1.3473773]]   # d_v * log|eps|_v, reals first
#   unit_args: [[2.5516862]]                # argument of each unit at each complex place
#   roots_of_unity: 2
#   torsion_args: [1]                       # optional, default 1 per complex place
#   zeta_residue: 0.8146264


def load_field_file(file_path: str) -> NumberField:
    """
    Parses a field description file (YAML or JSON) into a validated NumberField.

    Args:
        file_path (str): Path to the file. ``unit_logs`` is accepted as an alias of
            ``unit_log_matrix``; the name defaults to the file stem.

    Returns:
        NumberField: The validated field.

    Raises:
        FieldDataException: If the file is missing, unparsable, or fails validation
            (Dirichlet rank, product formula, positivity).
    """
    stem = os.path.splitext(os.path.basename(file_path))[0]
    try:
        with open(file_path, "r") as f:
            if file_path.endswith((".yaml", ".yml")):
                data = yaml.safe_load(f)
            elif file_path.endswith(".json"):
                data = json.load(f)
            else:
                raise FieldDataException(stem, f"unsupported field file format: {file_path} (use YAML or JSON)")
    except FileNotFoundError:
        raise FieldDataException(stem, f"field file not found: {file_path}") from None
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise FieldDataException(stem, f"error parsing {file_path}: {e}") from e

    if not isinstance(data, dict):
        raise FieldDataException(stem, "top level of a field file must be a mapping")
    data = dict(data)
    if "unit_logs" in data:
        data["unit_log_matrix"] = data.pop("unit_logs")
    data.setdefault("name", stem)
    try:
        field = NumberField(**data)
    except ValidationError as e:
        raise FieldDataException(str(data.get("name")), f"validation failed: {e}") from e
    logger.info("Loaded field %s (r1=%d, r2=%d) from %s", field.name, field.r1, field.r2, file_path)
    return field


def resolve_field(source: str) -> NumberField:
    """Built-in field name or path to a field file."""
    if source in BUILTIN_FIELDS:
        return BUILTIN_FIELDS[source]
    return load_field_file(source)

# Number-field descriptors, unramified Hecke-character lattices and per-character budgets.

from .builtin import BUILTIN_FIELDS, builtin_field
from .characters import (
    character_lattice,
    character_value,
    inverse_character,
    kappa_chi,
    moment_budget,
    pole_order,
    torsion_character_value,
    unit_character_value,
)
from .field_file import load_field_file, resolve_field
from .models import CharacterBudget, HeckeCharacter, MomentBudget, NumberField, PlaceType

__all__ = [
    "NumberField",
    "HeckeCharacter",
    "PlaceType",
    "MomentBudget",
    "CharacterBudget",
    "BUILTIN_FIELDS",
    "builtin_field",
    "load_field_file",
    "resolve_field",
    "character_lattice",
    "character_value",
    "inverse_character",
    "unit_character_value",
    "torsion_character_value",
    "kappa_chi",
    "moment_budget",
    "pole_order",
]

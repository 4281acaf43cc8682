from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Product-formula and Dirichlet-rank checks on the unit data use this relative slack.
UNIT_LOG_TOLERANCE = 1e-6


class PlaceType(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


class NumberField(BaseModel):
    """
    Archimedean description of a number field, as consumed by every per-place product.

    Places are ordered with the r1 real places first, then the r2 complex places.
    Field data is input: the library never computes units, discriminants or residues.
    """
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Label used in reports, e.g. 'Q_sqrt2'.")
    r1: int = Field(..., ge=0, description="Number of real places.")
    r2: int = Field(..., ge=0, description="Number of complex places (pairs of embeddings).")
    abs_discriminant: int = Field(..., ge=1, description="Absolute value of the discriminant.")
    unit_log_matrix: List[List[float]] = Field(
        default_factory=list,
        description="One row per fundamental unit: d_v * log|eps|_v over the archimedean places.",
    )
    roots_of_unity: int = Field(2, ge=1, description="Order w_k of the torsion of the unit group.")
    zeta_residue: float = Field(..., gt=0, description="Residue of the Dedekind zeta function at s = 1.")
    unit_args: List[List[float]] = Field(
        default_factory=list,
        description="Per unit, the argument (radians) of its embedding at each complex place.",
    )
    torsion_args: List[int] = Field(
        default_factory=list,
        description="Per complex place, k with the generating root of unity embedded as exp(2 pi i k / w).",
    )

    @field_validator("name")
    @classmethod
    def name_format(cls, value: str) -> str:
        if not value or any(ch.isspace() for ch in value):
            raise ValueError("field name must be non-empty without whitespace")
        return value

    @model_validator(mode="after")
    def check_consistency(self) -> "NumberField":
        places = self.r1 + self.r2
        if self.r1 + 2 * self.r2 < 1:
            raise ValueError("degree r1 + 2 r2 must be at least 1")
        if len(self.unit_log_matrix) != places - 1:
            raise ValueError(
                f"Dirichlet rank is {places - 1} but {len(self.unit_log_matrix)} unit vectors were given"
            )
        for row in self.unit_log_matrix:
            if len(row) != places:
                raise ValueError(f"unit vector {row} must have one entry per place ({places})")
            scale = max(1.0, max(abs(x) for x in row))
            if abs(sum(row)) > UNIT_LOG_TOLERANCE * scale:
                raise ValueError(f"unit vector {row} violates the product formula (sum {sum(row):.3e})")
        if self.r1 > 0 and self.roots_of_unity != 2:
            raise ValueError("a field with a real place has exactly two roots of unity")
        if self.roots_of_unity % 2:
            raise ValueError("roots_of_unity must be even (it contains -1)")
        if self.r2 > 0 and self.unit_log_matrix and len(self.unit_args) != len(self.unit_log_matrix):
            raise ValueError("unit_args must list the complex-place arguments of every unit")
        for row in self.unit_args:
            if len(row) != self.r2:
                raise ValueError("each unit_args row needs one argument per complex place")
        if self.torsion_args and len(self.torsion_args) != self.r2:
            raise ValueError("torsion_args needs one entry per complex place")
        return self

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def place_count(self) -> int:
        return self.r1 + self.r2

    @property
    def unit_rank(self) -> int:
        return self.r1 + self.r2 - 1

    @property
    def place_types(self) -> Tuple[PlaceType, ...]:
        return (PlaceType.REAL,) * self.r1 + (PlaceType.COMPLEX,) * self.r2

    @property
    def local_degrees(self) -> np.ndarray:
        return np.array([1.0] * self.r1 + [2.0] * self.r2)

    @property
    def regulator(self) -> float:
        if self.unit_rank == 0:
            return 1.0
        # drop any one place; the minor is the regulator up to sign
        minor = np.array(self.unit_log_matrix, dtype=float)[:, :-1]
        return float(abs(np.linalg.det(minor)))

    def torsion_exponents(self) -> List[int]:
        return list(self.torsion_args) if self.torsion_args else [1] * self.r2

    def unit_arguments(self) -> np.ndarray:
        if self.unit_args:
            return np.array(self.unit_args, dtype=float).reshape(self.unit_rank, self.r2)
        return np.zeros((self.unit_rank, self.r2))


class HeckeCharacter(BaseModel):
    """
    Unramified spherical Hecke character, described by its archimedean parameters.

    ``t_values`` has one entry per archimedean place (reals first); ``ell_values`` one
    integer per complex place.
    """
    model_config = ConfigDict(frozen=True)

    t_values: Tuple[float, ...]
    ell_values: Tuple[int, ...] = ()
    label: Optional[str] = Field(None, description="Lattice coordinates, e.g. 'm=(1,)'.")

    @property
    def r1(self) -> int:
        return len(self.t_values) - len(self.ell_values)

    @property
    def is_trivial(self) -> bool:
        return all(t == 0.0 for t in self.t_values) and all(ell == 0 for ell in self.ell_values)

    def inverse(self) -> "HeckeCharacter":
        return HeckeCharacter(
            t_values=tuple(-t + 0.0 for t in self.t_values),
            ell_values=tuple(-ell for ell in self.ell_values),
            label=f"inverse({self.label})" if self.label else None,
        )

    @classmethod
    def trivial(cls, field: NumberField) -> "HeckeCharacter":
        return cls(t_values=(0.0,) * field.place_count, ell_values=(0,) * field.r2, label="trivial")


class CharacterBudget(BaseModel):
    """Characters with a nonempty window {t : kappa_chi(t) <= T} and the window's measure."""
    character: HeckeCharacter
    measure: float = Field(ge=0)
    intervals: List[Tuple[float, float]] = Field(default_factory=list)


class MomentBudget(BaseModel):
    T: float
    character_count: int = Field(ge=0)
    total_measure: float = Field(ge=0)
    per_character: List[CharacterBudget] = Field(default_factory=list)

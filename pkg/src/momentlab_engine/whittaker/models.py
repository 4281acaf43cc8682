import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class LocalSatakeData(BaseModel):
    """
    Unramified local data of a GL(2) form at a finite place: residue field size q
    and Satake parameters (alpha, beta).
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2, description="Residue field cardinality (a prime power).")
    alpha: complex = Field(..., description="First Satake parameter.")
    beta: complex = Field(..., description="Second Satake parameter.")
    central_ok: bool = Field(False, description="Set when |alpha beta| = 1 (unitary central character) is intended.")

    @field_validator("q")
    @classmethod
    def prime_power(cls, value: int) -> int:
        n, p = value, 2
        while n % p:
            p += 1
        while n % p == 0:
            n //= p
        if n != 1:
            raise ValueError(f"q = {value} is not a prime power")
        return value

    @model_validator(mode="after")
    def nonzero_parameters(self) -> "LocalSatakeData":
        if self.alpha == 0 or self.beta == 0:
            raise ValueError("Satake parameters must be nonzero")
        if self.central_ok and abs(abs(self.alpha * self.beta) - 1.0) > 1e-10:
            raise ValueError("central_ok is set but |alpha beta| != 1")
        return self

    def conjugate(self) -> "LocalSatakeData":
        """Satake data of the complex-conjugate form."""
        return self.model_copy(update={"alpha": self.alpha.conjugate(), "beta": self.beta.conjugate()})


class LocalCharacter(BaseModel):
    """Unramified character, determined by its value at a uniformizer (|.|^s twists folded in)."""
    model_config = ConfigDict(frozen=True)

    value_at_uniformizer: complex
    unramified: bool = True

    @field_validator("unramified")
    @classmethod
    def only_unramified(cls, value: bool) -> bool:
        if not value:
            raise ValueError("only unramified local characters are supported")
        return value

    @classmethod
    def absolute_value_power(cls, q: int, v: complex) -> "LocalCharacter":
        """The character |.|^v, whose value at a uniformizer is q^{-v}."""
        return cls(value_at_uniformizer=complex(q) ** (-complex(v)))

    def times(self, other: "LocalCharacter") -> "LocalCharacter":
        return LocalCharacter(value_at_uniformizer=self.value_at_uniformizer * other.value_at_uniformizer)

    def inverse(self) -> "LocalCharacter":
        return LocalCharacter(value_at_uniformizer=1.0 / self.value_at_uniformizer)


class DifferentData(BaseModel):
    """
    Local different of the field at a finite place: residue field size q and
    valuation delta, so that |d|_v = q^{-delta}. Named after the different ideal
    it describes, not the differential.
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2)
    delta: int = Field(0, ge=0)

    @property
    def d_norm(self) -> float:
        return float(self.q) ** (-self.delta)

    @classmethod
    def from_norm(cls, q: int, d_norm: float) -> "DifferentData":
        delta = -math.log(d_norm) / math.log(q)
        if not 0.0 < d_norm <= 1.0 or abs(delta - round(delta)) > 1e-9:
            raise ValueError(f"d_norm = {d_norm} is not a nonpositive integer power of {q}")
        return cls(q=q, delta=int(round(delta)))


class TruncatedSum(BaseModel):
    """A truncated local series: value, the number of terms summed and a geometric tail bound."""
    model_config = ConfigDict(frozen=True)

    value: complex
    terms: int = Field(ge=1)
    tail_bound: float = Field(ge=0)


class MellinComparison(BaseModel):
    """Quadrature value of a Mellin transform against its gamma closed form."""
    model_config = ConfigDict(frozen=True)

    quadrature: complex
    closed_form: complex
    relative_gap: float = Field(ge=0)
    error_estimate: float = Field(0.0, ge=0)

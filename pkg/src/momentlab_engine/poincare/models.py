from typing import List

from pydantic import BaseModel, ConfigDict, Field


class UpperHalfPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float = Field(..., gt=0)

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        return cls(x=z.real, y=z.imag)

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


class SeriesTruncation(BaseModel):
    """
    Coset pairs (c, d) with max(|c|, |d|) <= coprime_bound; the translation sum over n
    is exact (Poisson summation or a direct sum of 2 * translation_bound + 1 terms
    with an Euler-Maclaurin tail).
    """
    model_config = ConfigDict(frozen=True)

    coprime_bound: int = Field(100, ge=1)
    translation_bound: int = Field(60, ge=4)


class SeriesValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: complex
    tail_estimate: float = Field(ge=0, description="Estimate of the cosets outside the truncation square.")
    terms: int = Field(ge=1, description="Number of cosets summed.")


class PartialSumRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    coprime_bound: int
    value: complex
    increment: float = Field(ge=0, description="|S_N - S_{N_prev}|, 0 for the first rung.")
    tail_estimate: float = Field(ge=0)


class CauchyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: List[PartialSumRow]
    increments_decreasing: bool
    final_relative_increment: float
    converged: bool


class DominationRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    poincare: float
    eisenstein_sum: float
    ratio: float


class DominationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    v: float
    w: float
    epsilon: float
    rows: List[DominationRow]
    constant: float = Field(description="Largest ratio over the grid.")

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..fields.models import PlaceType

# Local parameters with |Im mu| below this satisfy the Kim-Shahidi bound.
KIM_SHAHIDI_BOUND = 1.0 / 9.0


class MeasureConvention(str, Enum):
    """
    Normalisation of the complex-place main term.

    ``displayed`` is the gamma-ratio main term as written; ``integral`` rescales it
    by 4^{-w}, the constant relating it to the positive integral representation.
    """
    DISPLAYED = "displayed"
    INTEGRAL = "integral"


class KernelPoint(BaseModel):
    """Spectral variable s, twist exponent v and archimedean weight exponent w."""
    model_config = ConfigDict(frozen=True)

    s: complex
    v: complex
    w: complex

    @property
    def admissible(self) -> bool:
        return self.w.real > 1.0


class SpectralParams(BaseModel):
    """Local spectral parameters (i mu1, i mu2) of the two forms at one archimedean place."""
    model_config = ConfigDict(frozen=True)

    mu1: complex = 0j
    mu2: complex = 0j

    @classmethod
    def diagonal(cls, mu: complex) -> "SpectralParams":
        return cls(mu1=mu, mu2=mu)

    @property
    def kim_shahidi_admissible(self) -> bool:
        return abs(self.mu1.imag) < KIM_SHAHIDI_BOUND and abs(self.mu2.imag) < KIM_SHAHIDI_BOUND


class LocalCharacterParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    t_nu: float = 0.0
    ell_nu: int = 0


class MainTerm(BaseModel):
    """
    Asymptotic main term of the archimedean kernel at one place.

    At real places the gamma-ratio constant is not available in closed form;
    ``constant_normalized`` is then True and ``value`` carries the constant 1.
    """
    model_config = ConfigDict(frozen=True)

    place_type: PlaceType
    value: complex
    constant_normalized: bool = False
    convention: MeasureConvention = MeasureConvention.DISPLAYED


class KernelIntegral(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: complex
    error_estimate: float = Field(ge=0, description="Refinement difference of the outer rule.")
    tail_estimate: float = Field(ge=0, description="Analytic estimate of the truncated head and tail.")
    evaluations: int = Field(ge=0)


class MellinCheck(BaseModel):
    """Both sides of a Mellin identity and their relative gap."""
    model_config = ConfigDict(frozen=True)

    place_type: PlaceType
    lhs: complex
    rhs: complex
    relative_gap: float = Field(ge=0)
    error_estimate: float = Field(0.0, ge=0)

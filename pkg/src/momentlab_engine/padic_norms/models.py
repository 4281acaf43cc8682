from pydantic import BaseModel, ConfigDict, Field, field_validator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


class LocalNormParams(BaseModel):
    """
    Residue field size and exponent of the norm integral over PGL(2) of a p-adic field.

    ``sigma`` is not range-checked here: the integral reports divergence for sigma <= 1.
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., ge=2, description="Residue field cardinality (prime).")
    sigma: float = Field(..., description="Exponent of ||g||^{-sigma}.")

    @field_validator("q")
    @classmethod
    def prime_only(cls, value: int) -> int:
        if not is_prime(value):
            raise ValueError(f"q = {value} is not prime; prime powers are not supported")
        return value


class LocalNormIntegral(BaseModel):
    model_config = ConfigDict(frozen=True)

    q: int
    sigma: float
    exact: float = Field(description="Integral of ||g||^{-sigma} with meas(K) = 1, from exact cell counts.")
    upper_bound: float = Field(description="(1 + q^{2-sigma}) / (1 - q^{1-sigma}).")
    direct_sum: float = Field(description="Cell-by-cell summation of the same integral.")
    levels: int = Field(ge=1, description="Number of Cartan levels in the direct sum.")
    tail_bound: float = Field(ge=0)


class EulerProductCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    prime_bound: int
    primes: int = Field(ge=0, description="Number of primes in the truncated product.")
    product: float
    zeta_form: float
    gap: float = Field(ge=0)


class DominatingIntegral(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: float
    sigma: float
    closed_form: float
    quadrature: float
    error_estimate: float = Field(ge=0)

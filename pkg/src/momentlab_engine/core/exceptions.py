class MomentLabException(Exception):
    """Base exception class for all MomentLab specific errors."""
    def __init__(self, message="An unspecified error occurred in MomentLab."):
        self.message = message
        super().__init__(self.message)

class ConfigException(MomentLabException):
    """Exception raised for errors in configuration loading or validation."""
    def __init__(self, message="Configuration error."):
        super().__init__(message)

class NumericsException(MomentLabException):
    """Base class for failures inside numerical evaluations."""
    def __init__(self, message="Numerical evaluation failed."):
        super().__init__(message)

class PoleError(NumericsException):
    """Raised when an argument lands on a pole of a gamma or zeta factor."""
    def __init__(self, factor: str = "unknown factor", message="Argument is at a pole."):
        self.factor = factor
        super().__init__(f"Pole of {factor}: {message}")

class DomainError(NumericsException):
    """Raised when arguments fall outside the region where a formula is valid."""
    def __init__(self, message="Argument outside the validated domain."):
        super().__init__(message)

class NumericOverflowError(NumericsException):
    """Raised when a result would overflow double precision."""
    def __init__(self, message="Result overflows double precision."):
        super().__init__(message)

class QuadratureError(NumericsException):
    """Raised when a quadrature fails to reach its tolerance.

    The best estimate reached before giving up is kept on the exception so
    that callers can still report it.
    """
    def __init__(self, message="Quadrature did not converge.", partial_estimate=None, error_estimate=None):
        self.partial_estimate = partial_estimate
        self.error_estimate = error_estimate
        super().__init__(message)

class DivergenceError(NumericsException):
    """Raised when a series or integral is detected to diverge."""
    def __init__(self, message="Series does not converge.", partial_sum=None, tail_bound=None):
        self.partial_sum = partial_sum
        self.tail_bound = tail_bound
        super().__init__(message)

class FieldDataException(MomentLabException):
    """Exception for malformed or inconsistent number-field descriptions."""
    def __init__(self, field_name: str = "unknown", message="Invalid field data."):
        self.field_name = field_name
        super().__init__(f"Field '{field_name}': {message}")

class CharacterLatticeException(FieldDataException):
    """Exception for failures while solving for unramified Hecke characters."""
    def __init__(self, field_name: str = "unknown", message="Character lattice could not be solved."):
        super().__init__(field_name=field_name, message=message)

class CheckFailure(MomentLabException):
    """Raised when a verification check measures a value beyond its threshold."""
    def __init__(self, check: str, measured=None, threshold=None, message="Check failed."):
        self.check = check
        self.measured = measured
        self.threshold = threshold
        super().__init__(f"{check}: {message} (measured={measured}, threshold={threshold})")


class TruncationWarning(UserWarning):
    """A truncated sum or integral has a tail estimate above the requested tolerance."""


class SlowDecayWarning(UserWarning):
    """An integrand decays too slowly for the chosen quadrature window."""

"""
Error hierarchy for the hadamard-flow toolkit.

Every error carries a human readable ``detail``, the process exit code used by
the command line and the HTTP status code used by the API routers.
"""
from typing import Optional


class HadamardFlowError(Exception):
    """
    Base class for all domain errors.
    """
    exit_code = 64
    status_code = 400

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidParameter(HadamardFlowError):
    exit_code = 65


class DegenerateInput(HadamardFlowError):
    exit_code = 66


class InvalidSeries(HadamardFlowError):
    exit_code = 67


class IndexOutOfRange(HadamardFlowError):
    exit_code = 68


class VariantMismatch(HadamardFlowError):
    exit_code = 69


class IncompatibleSurd(HadamardFlowError):
    exit_code = 70


class CoefficientOverflow(HadamardFlowError):
    """
    Raised when t * Re(m_n) leaves the binary64 exponent range.
    """
    exit_code = 71
    status_code = 422

    def __init__(self, n: int, exponent: float):
        super().__init__(f"exponent {exponent:.6g} at n={n} exceeds the representable range")
        self.n = n
        self.exponent = exponent


class WitnessNotFound(HadamardFlowError):
    exit_code = 72
    status_code = 422


class PeriodicityViolation(HadamardFlowError):
    exit_code = 73
    status_code = 500


class NoOffAxisPole(HadamardFlowError):
    exit_code = 74
    status_code = 422


class PeriodMismatch(HadamardFlowError):
    exit_code = 75
    status_code = 422


class IllConditioned(HadamardFlowError):
    exit_code = 76
    status_code = 422

    def __init__(self, detail: str, residual: Optional[float] = None):
        super().__init__(detail)
        self.residual = residual


class DomainExceeded(HadamardFlowError):
    exit_code = 77
    status_code = 422


class PoleAtMinusOne(HadamardFlowError):
    exit_code = 78


class ParseError(HadamardFlowError):
    exit_code = 79

    def __init__(self, detail: str, position: int):
        super().__init__(f"{detail} at position {position}")
        self.position = position


class NegativeTimeForSemigroupOnly(HadamardFlowError):
    exit_code = 80
    status_code = 409

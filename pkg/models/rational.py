"""
Rational forms N(z)/Q(z) recovered from coefficient sequences, and the pole
reports built from them.
"""
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.exceptions import DegenerateInput


@dataclass(frozen=True, eq=False)
class RationalForm:
    """
    N(z)/Q(z) with ascending coefficient vectors.

    ``exact`` forms come from a detected period p and have Q = 1 - z^p;
    fitted forms carry the least-squares ``residual``.
    """
    numerator_coeffs: np.ndarray
    denominator_coeffs: np.ndarray
    exact: bool = False
    residual: Optional[float] = None
    period: Optional[int] = None

    def __post_init__(self):
        num = np.array(self.numerator_coeffs, dtype=np.complex128).reshape(-1)
        den = np.array(self.denominator_coeffs, dtype=np.complex128).reshape(-1)
        if num.size == 0 or den.size == 0:
            raise DegenerateInput("a rational form needs numerator and denominator coefficients")
        if den[0] == 0 or den[-1] == 0:
            raise DegenerateInput("denominator needs nonzero constant and leading coefficients")
        if self.exact and (self.period is None or num.size > self.period):
            raise DegenerateInput("exact periodic forms need deg N < period")
        num.setflags(write=False)
        den.setflags(write=False)
        object.__setattr__(self, "numerator_coeffs", num)
        object.__setattr__(self, "denominator_coeffs", den)

    @property
    def denominator_degree(self) -> int:
        return self.denominator_coeffs.size - 1


@dataclass(frozen=True)
class Pole:
    location: complex
    residual: float


@dataclass(frozen=True)
class PoleReport:
    poles: List[Pole]
    all_real: bool
    tolerance: float
    note: Optional[str] = None


@dataclass(frozen=True)
class PoleAnalysis:
    """
    Outcome of the two-tier pipeline; ``rational`` is None when no rational
    form explains the coefficients.
    """
    rational: Optional[RationalForm]
    report: PoleReport
    method: str = "none"
    notes: List[str] = field(default_factory=list)

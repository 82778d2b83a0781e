"""
Semigroup evaluators and probe results.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from core.exceptions import InvalidParameter
from models.symbols import EulerPoly, HardyRational, MultiplierSymbol
from models.verdict import ClosedFormDilation


@dataclass(frozen=True)
class SemigroupEvaluator:
    """
    T_t = multiplier with symbol (exp(t m_n)); ``closed_form`` is the dilation
    e^(tb) f(e^(ta) x), available for real first-order Euler symbols.
    """
    symbol: MultiplierSymbol
    closed_form: Optional[ClosedFormDilation] = None

    def __post_init__(self):
        if self.closed_form is None:
            return
        s = self.symbol
        if not isinstance(s, EulerPoly) or s.degree > 1 or not s.coeff(1).is_real():
            raise InvalidParameter("a closed form needs a first-order Euler symbol with real a")
        if complex(s.coeff(1)) != complex(self.closed_form.a) or complex(s.coeff(0)) != self.closed_form.b:
            raise InvalidParameter("closed form does not match the symbol coefficients")

    @classmethod
    def for_symbol(cls, s: MultiplierSymbol) -> "SemigroupEvaluator":
        if isinstance(s, EulerPoly) and s.degree <= 1 and s.coeff(1).is_real():
            return cls(s, ClosedFormDilation(a=float(s.coeff(1).re), b=complex(s.coeff(0))))
        return cls(s)

    @property
    def is_group(self) -> bool:
        """
        Negative times are allowed for Hardy and real first-order Euler symbols.
        """
        return isinstance(self.symbol, HardyRational) or self.closed_form is not None


@dataclass(frozen=True)
class ProbeResult:
    """
    Strong-continuity trace sup |T_t f - f| on [-R, R] for t = t0, t0/2, ...

    Sampled on a compact interval only; a surrogate for convergence in the
    topology of real analytic functions.
    """
    times: Tuple[float, ...]
    trace: Tuple[float, ...]
    sup_values: Tuple[float, ...]
    sup_bound: float
    R: float
    grid: int
    surrogate: bool = True
    notes: Tuple[str, ...] = field(default_factory=tuple)

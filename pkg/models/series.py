"""
Truncated power series at zero and Laurent tails at infinity.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from core.exceptions import InvalidSeries

CoeffsLike = Union[Sequence[complex], np.ndarray]


def _as_coeffs(coeffs: CoeffsLike) -> np.ndarray:
    arr = np.array(coeffs, dtype=np.complex128).reshape(-1)
    if arr.size == 0:
        raise InvalidSeries("a series needs at least one coefficient")
    if not np.all(np.isfinite(arr)):
        raise InvalidSeries("series coefficients must be finite")
    arr.setflags(write=False)
    return arr


class _CoefficientSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: CoeffsLike):
        self.coeffs = _as_coeffs(coeffs)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self) -> int:
        return self.coeffs.size

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.coeffs.tobytes()))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        m = min(len(self), len(other))
        return type(self)(self.coeffs[:m] + other.coeffs[:m])

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        m = min(len(self), len(other))
        return type(self)(self.coeffs[:m] - other.coeffs[:m])

    def __mul__(self, scalar: complex):
        return type(self)(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.coeffs)

    def truncate(self, order: int):
        return type(self)(self.coeffs[: order + 1])

    @classmethod
    def zeros(cls, order: int):
        return cls(np.zeros(order + 1, dtype=np.complex128))

    @classmethod
    def ones(cls, order: int):
        return cls(np.ones(order + 1, dtype=np.complex128))

    @classmethod
    def monomial(cls, n: int, order: int):
        c = np.zeros(order + 1, dtype=np.complex128)
        c[n] = 1.0
        return cls(c)


class TruncatedTaylorSeries(_CoefficientSeries):
    """
    Partial sum of f(z) = sum f_n z^n around zero, n = 0..N.
    """

    def __repr__(self) -> str:
        return f"TruncatedTaylorSeries(order={self.truncation_order})"


class LaurentTailSeries(_CoefficientSeries):
    """
    Partial sum of f(z) = sum f_n / z^(n+1) around infinity, n = 0..N.
    """

    def __repr__(self) -> str:
        return f"LaurentTailSeries(order={self.truncation_order})"


@dataclass(frozen=True)
class RadiusEstimate:
    """
    Cauchy-Hadamard surrogate for the radius of convergence.

    ``radius`` is ``math.inf`` when ``infinite`` is set and 0.0 when
    ``divergent`` is set.
    """
    radius: float
    window: Tuple[int, int]
    uncertainty: float
    infinite: bool = False
    divergent: bool = False
    growth: Optional[float] = None

"""
Multiplier symbols: the eigenvalue sequences (m_n) of Hadamard multipliers.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from core.exceptions import InvalidSeries
from models.scalars import ExactScalar


def _strip(coeffs: Sequence[ExactScalar]) -> Tuple[ExactScalar, ...]:
    out = list(coeffs) or [ExactScalar()]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class EulerPoly:
    """
    P(theta) = sum a_k theta^k with theta f(x) = x f'(x); m_n = P(n).
    """
    coeffs: Tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ExactScalar:
        return self.coeffs[k] if k < len(self.coeffs) else ExactScalar()


@dataclass(frozen=True)
class HardyRational:
    """
    m_n = sum a_k / (n+1)^k, the symbol of sum a_k H^k with H the Hardy operator.
    """
    coeffs: Tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> ExactScalar:
        return self.coeffs[k] if k < len(self.coeffs) else ExactScalar()


@dataclass(frozen=True, eq=False)
class Explicit:
    """
    A finite multiplier sequence given numerically.
    """
    seq: np.ndarray

    def __post_init__(self):
        arr = np.array(self.seq, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise InvalidSeries("an explicit symbol needs at least one entry")
        if not np.all(np.isfinite(arr)):
            raise InvalidSeries("explicit symbol entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "seq", arr)

    def __len__(self) -> int:
        return self.seq.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Explicit):
            return NotImplemented
        return self.seq.shape == other.seq.shape and bool(np.all(self.seq == other.seq))

    def __hash__(self) -> int:
        return hash(self.seq.tobytes())


MultiplierSymbol = Union[EulerPoly, HardyRational, Explicit]

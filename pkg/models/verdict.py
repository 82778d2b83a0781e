"""
Generation verdicts and the certificates that back them.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from models.scalars import ExactScalar


class VerdictKind(str, Enum):
    GENERATES = "Generates"
    NOT_GENERATES = "NotGenerates"
    UNKNOWN = "Unknown"


class Reason(str, Enum):
    EULER1 = "Euler1"
    NEG_CASE1 = "NegCase1"
    NEG_CASE2 = "NegCase2"
    NEG_IRRATIONAL_ROTATION = "NegIrrationalRotation"
    HARDY_GROUP = "HardyGroup"
    ADDITIVITY = "Additivity"
    PAPER_SILENT = "PaperSilent"


@dataclass(frozen=True)
class ClosedFormDilation:
    """
    T_t f(x) = e^(tb) f(e^(ta) x) for the symbol a*theta + b with real a.
    """
    a: float
    b: complex


@dataclass(frozen=True)
class BlowUp:
    """
    |e^(tP(n))|^(1/n) recorded along sample_n; strictly increasing.
    """
    l: int
    t: float
    sample_n: Tuple[int, ...]
    growth: Tuple[float, ...]


@dataclass(frozen=True)
class RootOfUnityPole:
    """
    f_t0 = N(z) / (1 - z^(2q)) has a pole at the non-real 2q-th root of unity ``pole``.

    f_t0 here is built from the imaginary part of the symbol only. When a
    real b_1 theta term was split off, f_t0 of the full symbol has its pole
    at ``pole * exp(-t0 b_1)``; the verdict notes record that point.
    """
    S: int
    q: int
    n0: int
    t0: float
    period: int
    pole: complex
    numerator_abs: float
    root_index: int


@dataclass(frozen=True)
class IrrationalRotation:
    """
    f_t0 = 1 / (1 - e^(t0 c) z) with its pole e^(-t0 c) off the real axis.

    ``r_description`` is the exact coefficient behind the rotation: Im a_1 = r
    for the degree >= 2 case (t0 = 2 S pi, pole e^(-2 r pi i)) or the full
    a_1 for the first-order case.
    """
    r_description: ExactScalar
    pole: complex
    t0: float


@dataclass(frozen=True)
class MellinWitnessRef:
    a: float
    omega_params: Dict[str, List[float]]


@dataclass(frozen=True)
class SumOf:
    left: "Certificate"
    right: "Certificate"


Certificate = Union[ClosedFormDilation, BlowUp, RootOfUnityPole, IrrationalRotation, MellinWitnessRef, SumOf]


@dataclass(frozen=True)
class Witness:
    """
    Output of the n0 search: m_n = (i/S) Ptilde(n), t0 = S pi / q.
    """
    S: int
    ptilde: Tuple[int, ...]
    n0: int
    q: int
    t0: float


@dataclass(frozen=True)
class GenerationVerdict:
    kind: VerdictKind
    reason: Reason
    certificate: Optional[Certificate] = None
    group: bool = False
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind == VerdictKind.UNKNOWN and self.certificate is not None:
            raise ValueError("Unknown verdicts carry no certificate")
        if self.kind != VerdictKind.UNKNOWN and self.certificate is None:
            raise ValueError(f"{self.kind.value} verdicts need a certificate")

    @classmethod
    def unknown(cls, note: Optional[str] = None) -> "GenerationVerdict":
        return cls(VerdictKind.UNKNOWN, Reason.PAPER_SILENT, notes=(note,) if note else ())

    @property
    def generates(self) -> bool:
        return self.kind == VerdictKind.GENERATES

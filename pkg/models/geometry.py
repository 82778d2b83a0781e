"""
Asymptotic halfplanes, their exhausting regions and Mellin witnesses.
"""
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from core.exceptions import InvalidParameter


@dataclass(frozen=True)
class AsymptoticHalfplane:
    """
    omega = union over n of kappa_n + {z: |Im z| < K_n Re z}, finitely many sectors.
    """
    kappas: Tuple[float, ...]
    Ks: Tuple[float, ...]

    def __post_init__(self):
        kappas = tuple(float(k) for k in self.kappas)
        Ks = tuple(float(K) for K in self.Ks)
        if not kappas or len(kappas) != len(Ks):
            raise InvalidParameter("kappas and Ks must be nonempty and of equal length")
        if kappas[0] >= 0:
            raise InvalidParameter(f"kappa_1 must be negative, got {kappas[0]}")
        if Ks[0] <= 0 or any(b <= a for a, b in zip(Ks, Ks[1:])):
            raise InvalidParameter("Ks must be positive and strictly increasing")
        object.__setattr__(self, "kappas", kappas)
        object.__setattr__(self, "Ks", Ks)

    def __len__(self) -> int:
        return len(self.kappas)


@dataclass(frozen=True)
class GammaRegion:
    """
    Gamma_j = closure of the union over n <= j of kappa_n + 1/j + omega_{K_n}.
    """
    j: int
    parent: AsymptoticHalfplane

    def __post_init__(self):
        if not 1 <= self.j <= len(self.parent):
            raise InvalidParameter(f"j must lie in 1..{len(self.parent)}, got {self.j}")

    def apexes(self) -> Tuple[float, ...]:
        return tuple(k + 1.0 / self.j for k in self.parent.kappas[: self.j])


@dataclass(frozen=True, eq=False)
class MellinWitness:
    """
    mu_t(z) = exp(sum_k t a_k / (z+1)^k) on omega with kappa_1 = -1/2, kappa_n = 0.
    """
    hardy_coeffs: np.ndarray
    t: float
    domain: AsymptoticHalfplane

    def __post_init__(self):
        coeffs = np.array(self.hardy_coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.size == 0 or not np.all(np.isfinite(coeffs)):
            raise InvalidParameter("Hardy coefficients must be nonempty and finite")
        kappas = self.domain.kappas
        if kappas[0] != -0.5 or any(k != 0 for k in kappas[1:]):
            raise InvalidParameter("witness domain needs kappa_1 = -1/2 and kappa_n = 0 for n >= 2")
        coeffs.setflags(write=False)
        object.__setattr__(self, "hardy_coeffs", coeffs)
        object.__setattr__(self, "t", float(self.t))


@dataclass(frozen=True, eq=False)
class SeminormReport:
    value: float
    argmax: complex
    points: np.ndarray
    values: np.ndarray
    metadata: Dict[str, object] = field(default_factory=dict)

"""
Mellin witnesses for Hardy symbols: sector geometry, sampled seminorms
||f||_j = sup over Gamma_j of |f(z)| e^(-(a+1/j) Re z), and the bound checks.

Suprema are sampled, never proven. Grids are deterministic: per sector the
two boundary rays plus an interior lattice clustered towards the apex, with
Re z capped at ``rmax``.
"""
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from core.config import settings
from core.exceptions import InvalidParameter, PoleAtMinusOne
from models.geometry import AsymptoticHalfplane, GammaRegion, MellinWitness, SeminormReport

logger = logging.getLogger(__name__)

K_RULE = "K_n = n"
# closure slack for membership tests on sampled boundary points
_CLOSURE_TOL = 1e-12


def default_halfplane(length: Optional[int] = None) -> AsymptoticHalfplane:
    """
    kappa_1 = -1/2, kappa_n = 0 for n >= 2 and K_n = n.
    """
    length = settings.SECTOR_COUNT if length is None else length
    if length < 1:
        raise InvalidParameter(f"sector count must be positive, got {length}")
    kappas = (-0.5,) + (0.0,) * (length - 1)
    Ks = tuple(float(n) for n in range(1, length + 1))
    return AsymptoticHalfplane(kappas, Ks)


def halfplane_contains(w: AsymptoticHalfplane, z: complex) -> bool:
    return any(abs((z - k).imag) < K * (z - k).real for k, K in zip(w.kappas, w.Ks))


def gamma_contains(g: GammaRegion, z: complex) -> bool:
    slack = _CLOSURE_TOL * (1 + abs(z))
    return any(
        abs((z - c).imag) <= K * (z - c).real + slack
        for c, K in zip(g.apexes(), g.parent.Ks)
    )


def build_hardy_witness(coeffs: Sequence[complex], t: float,
                        domain: Optional[AsymptoticHalfplane] = None) -> MellinWitness:
    return MellinWitness(np.asarray(coeffs, dtype=np.complex128), t, domain or default_halfplane())


def witness_eval(w: MellinWitness, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
    """
    mu_t(z), elementwise for arrays.
    """
    zs = np.asarray(z, dtype=np.complex128)
    shifted = zs + 1.0
    if np.any(np.abs(shifted) < settings.POLE_GUARD):
        raise PoleAtMinusOne("the Mellin witness is singular at z = -1")
    values = np.exp(w.t * P.polyval(1.0 / shifted, w.hardy_coeffs))
    return complex(values) if values.ndim == 0 else values


def _sector_grid(apex: float, K: float, count: int, rmax: float) -> np.ndarray:
    span = rmax - apex
    if span <= 0 or count < 4:
        return np.array([apex], dtype=np.complex128)
    ray_count = max(count // 4, 2)
    s = span * np.linspace(0.0, 1.0, ray_count) ** 2
    upper = apex + s * (1 + 1j * K)
    lower = apex + s * (1 - 1j * K)

    side = max(int(np.sqrt(max(count - 2 * ray_count, 4))), 2)
    s_in = span * np.linspace(0.0, 1.0, side) ** 2
    u = np.linspace(-1.0, 1.0, side)
    S, U = np.meshgrid(s_in, u)
    interior = (apex + S + 1j * U * K * S).ravel()
    return np.concatenate((upper, lower, interior))


def _sample_sectors(apexes: Sequence[float], Ks: Sequence[float],
                    points: Optional[int], rmax: Optional[float]) -> np.ndarray:
    points = settings.GRID_POINTS if points is None else points
    rmax = settings.GRID_RMAX if rmax is None else rmax
    if points < 16 or rmax <= 0:
        raise InvalidParameter("grids need at least 16 points and a positive rmax")
    per_sector = points // len(apexes)
    grids = [_sector_grid(c, K, per_sector, rmax) for c, K in zip(apexes, Ks)]
    return np.unique(np.concatenate(grids))


def sample_region(g: GammaRegion, points: Optional[int] = None, rmax: Optional[float] = None) -> np.ndarray:
    """
    Deterministic sample of Gamma_j with Re z <= rmax.
    """
    return _sample_sectors(g.apexes(), g.parent.Ks[: g.j], points, rmax)


def sample_halfplane(w: AsymptoticHalfplane, points: Optional[int] = None,
                     rmax: Optional[float] = None) -> np.ndarray:
    """
    Deterministic sample of the closure of omega, apexes at kappa_n, with
    Re z <= rmax.
    """
    return _sample_sectors(w.kappas, w.Ks, points, rmax)


def _weighted(values: np.ndarray, zs: np.ndarray, g: GammaRegion, a: float) -> np.ndarray:
    return np.abs(values) * np.exp(-(a + 1.0 / g.j) * zs.real)


def seminorm_report(w: MellinWitness, g: GammaRegion, a: float,
                    points: Optional[int] = None, rmax: Optional[float] = None) -> SeminormReport:
    if a <= 0:
        raise InvalidParameter(f"the weight exponent a must be positive, got {a}")
    zs = sample_region(g, points, rmax)
    weighted = _weighted(witness_eval(w, zs), zs, g, a)
    i = int(np.argmax(weighted))
    logger.debug(f"seminorm j={g.j}, a={a}: {weighted[i]:.6g} at {zs[i]:.4g} over {zs.size} points")
    return SeminormReport(
        value=float(weighted[i]),
        argmax=complex(zs[i]),
        points=zs,
        values=weighted,
        metadata={
            "j": g.j,
            "a": a,
            "t": w.t,
            "K_rule": K_RULE,
            "kappas": list(g.parent.kappas),
            "Ks": list(g.parent.Ks),
            "surrogate": True,
        },
    )


def seminorm(w: MellinWitness, g: GammaRegion, a: float,
             points: Optional[int] = None, rmax: Optional[float] = None) -> float:
    return seminorm_report(w, g, a, points, rmax).value


def verify_mellin_bound(w: MellinWitness, C_candidate: float,
                        points: Optional[int] = None, rmax: Optional[float] = None) -> Tuple[bool, float]:
    """
    Check |mu_t(z)| <= C e^(C |Re z|) on the sampled closure of omega,
    including the strip left of every Gamma region; returns (holds, max ratio).
    """
    if C_candidate <= 0:
        raise InvalidParameter(f"C must be positive, got {C_candidate}")
    zs = sample_halfplane(w.domain, points, rmax)
    ratio = np.abs(witness_eval(w, zs)) / (C_candidate * np.exp(C_candidate * np.abs(zs.real)))
    worst = float(np.max(ratio))
    return worst <= 1.0, worst


def witness_continuity_modulus(coeffs: Sequence[complex], t: float, h_list: Iterable[float],
                               g: GammaRegion, a: float,
                               points: Optional[int] = None, rmax: Optional[float] = None) -> List[float]:
    """
    Sampled ||mu_t - mu_(t+h)||_j for each h.
    """
    if a <= 0:
        raise InvalidParameter(f"the weight exponent a must be positive, got {a}")
    zs = sample_region(g, points, rmax)
    base = witness_eval(build_hardy_witness(coeffs, t, g.parent), zs)
    out = []
    for h in h_list:
        if h < 0:
            raise InvalidParameter(f"h must be nonnegative, got {h}")
        shifted = witness_eval(build_hardy_witness(coeffs, t + h, g.parent), zs)
        out.append(float(np.max(_weighted(base - shifted, zs, g, a))))
    return out


def mellin_constant(coeffs: Sequence[complex], t: float) -> float:
    """
    C = exp(sum_k 2^k |t a_k| + 1/2), from |1/(z+1)| <= 2 on omega.
    """
    c = np.abs(np.asarray(coeffs, dtype=np.complex128))
    return float(np.exp(np.sum(2.0 ** np.arange(c.size) * abs(t) * c) + 0.5))


def write_plot_data(report: SeminormReport, path: Union[str, Path]) -> Path:
    """
    CSV of (Re z, Im z, weighted |mu_t|) for external plotting.
    """
    path = Path(path)
    data = np.column_stack((report.points.real, report.points.imag, report.values))
    np.savetxt(path, data, delimiter=",", header="re,im,value", comments="")
    logger.info(f"wrote {len(data)} plot points to {path}")
    return path

"""
T_t on truncated series, the first-order Euler closed form and the probes
that check the semigroup properties numerically.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.config import settings
from core.exceptions import CoefficientOverflow, DomainExceeded, InvalidParameter
from models.semigroup import ProbeResult, SemigroupEvaluator
from models.series import TruncatedTaylorSeries
from services.series import evaluate_many, radius_of_convergence_estimate
from services.symbols import apply_multiplier, exp_scaled_coefficients, symbol_sequence

logger = logging.getLogger(__name__)


def evolve(e: SemigroupEvaluator, t: float, f: TruncatedTaylorSeries) -> TruncatedTaylorSeries:
    """
    f_n -> exp(t m_n) f_n.
    """
    scale = exp_scaled_coefficients(e.symbol, t, f.truncation_order)
    return TruncatedTaylorSeries(scale.coeffs * f.coeffs)


def euler_closed_form_evolve(a: float, b: complex, t: float, f: TruncatedTaylorSeries) -> TruncatedTaylorSeries:
    """
    Taylor coefficients of e^(tb) f(e^(ta) x).
    """
    n = np.arange(len(f))
    exponents = t * b + t * a * n
    over = np.nonzero(np.abs(exponents.real) > settings.EXPONENT_LIMIT)[0]
    if over.size:
        k = int(over[0])
        raise CoefficientOverflow(k, float(exponents[k].real))
    return TruncatedTaylorSeries(np.exp(exponents) * f.coeffs)


def _max_relative_deviation(x: np.ndarray, reference: np.ndarray) -> float:
    return float(np.max(np.abs(x - reference) / (1 + np.abs(reference))))


def check_semigroup_law(e: SemigroupEvaluator, t: float, s: float, f: TruncatedTaylorSeries) -> float:
    """
    max_n |(T_t T_s f)_n - (T_(t+s) f)_n| / (1 + |(T_(t+s) f)_n|).
    """
    composed = evolve(e, t, evolve(e, s, f))
    direct = evolve(e, t + s, f)
    return _max_relative_deviation(composed.coeffs, direct.coeffs)


def check_group_law(e: SemigroupEvaluator, t: float, f: TruncatedTaylorSeries) -> float:
    back = evolve(e, -t, evolve(e, t, f))
    return _max_relative_deviation(back.coeffs, f.coeffs)


def generator_finite_difference(e: SemigroupEvaluator, f: TruncatedTaylorSeries,
                                h: float) -> Tuple[TruncatedTaylorSeries, float]:
    """
    Forward difference (T_h f - f)/h against the multiplier applied to f.
    """
    if h <= 0:
        raise InvalidParameter(f"step h must be positive, got {h}")
    approx = (evolve(e, h, f).coeffs - f.coeffs) / h
    exact = apply_multiplier(e.symbol, f).coeffs
    diff = np.abs(approx - exact)
    mags = np.abs(exact)
    errors = np.where(mags > 0, diff / np.where(mags > 0, mags, 1.0), diff)
    return TruncatedTaylorSeries(approx), float(np.max(errors))


def generator_steps(e: SemigroupEvaluator, f: TruncatedTaylorSeries,
                    steps: Optional[Sequence[float]] = None) -> List[float]:
    """
    Step sizes for the generator check, shrunk together until
    h * max_n |m_n| <= GENERATOR_STEP_SCALE on the truncation so the forward
    difference stays in its first-order regime.
    """
    steps = list(settings.GENERATOR_STEPS if steps is None else steps)
    if not steps or min(steps) <= 0:
        raise InvalidParameter("generator steps must be positive")
    peak = float(np.max(np.abs(symbol_sequence(e.symbol, f.truncation_order))))
    if peak == 0:
        return steps
    shrink = min(1.0, settings.GENERATOR_STEP_SCALE / (max(steps) * peak))
    return [h * shrink for h in steps]


def strong_continuity_probe(e: SemigroupEvaluator, f: TruncatedTaylorSeries, t0: float, R: float,
                            grid: Optional[int] = None, levels: Optional[int] = None) -> ProbeResult:
    """
    sup over [-R, R] of |T_t f - f| for t = t0 2^-k, k = 0..levels-1, plus
    the boundedness surrogate sup_t sup_x |T_t f(x)|.
    """
    grid = settings.PROBE_GRID if grid is None else grid
    levels = settings.PROBE_LEVELS if levels is None else levels
    if grid < 16:
        raise InvalidParameter(f"probe grid needs at least 16 points, got {grid}")
    if t0 <= 0 or R <= 0 or levels < 1:
        raise InvalidParameter("t0, R and the level count must be positive")

    xs = np.linspace(-R, R, grid)
    base = evaluate_many(f, xs)
    check_domain = f.truncation_order >= settings.MIN_RADIUS_ORDER
    notes = () if check_domain else ("truncation too short for a domain check",)

    times, trace, sups = [], [], []
    for k in range(levels):
        t = t0 / 2 ** k
        evolved = evolve(e, t, f)
        if check_domain:
            est = radius_of_convergence_estimate(evolved)
            if R > settings.RELIABLE_FRACTION * est.radius:
                raise DomainExceeded(
                    f"R={R} exceeds the reliable region {settings.RELIABLE_FRACTION * est.radius:.4g} at t={t:.4g}"
                )
        values = evaluate_many(evolved, xs)
        times.append(t)
        trace.append(float(np.max(np.abs(values - base))))
        sups.append(float(np.max(np.abs(values))))
        logger.debug(f"probe t={t:.4g}: |T_t f - f| <= {trace[-1]:.4g}")

    return ProbeResult(
        times=tuple(times),
        trace=tuple(trace),
        sup_values=tuple(sups),
        sup_bound=max(sups),
        R=R,
        grid=grid,
        notes=notes,
    )

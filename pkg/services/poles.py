"""
Singularities of f_t from its Taylor coefficients.

Eventually periodic sequences are reconstructed exactly as N(z)/(1 - z^p);
everything else goes through a linear-prediction least-squares fit whose
denominator roots are found from the companion matrix.
"""
import logging
from typing import Any, Dict, List, Optional

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import toeplitz
from scipy.signal import lfilter

from core.config import settings
from core.exceptions import DegenerateInput, IllConditioned, PeriodMismatch
from models.rational import Pole, PoleAnalysis, PoleReport, RationalForm
from models.series import TruncatedTaylorSeries
from services.series import radius_of_convergence_estimate

logger = logging.getLogger(__name__)

# Unit-circle samples used to scale the cancellation test
_CIRCLE_SAMPLES = 512

NO_POLES_NOTE = "no finite poles detected (PaperSilent)"


def _as_vector(c) -> np.ndarray:
    arr = np.asarray(c, dtype=np.complex128).reshape(-1)
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        raise DegenerateInput("coefficient vector must be nonempty and finite")
    return arr


def detect_period(c, max_period: int) -> Optional[int]:
    """
    Smallest p <= max_period with |c_{n+p} - c_n| <= tol (1 + |c_n|) for all n.
    """
    c = _as_vector(c)
    if max_period < 1:
        raise DegenerateInput(f"max_period must be positive, got {max_period}")
    if c.size < 3 * max_period:
        raise DegenerateInput(f"period detection up to {max_period} needs {3 * max_period} coefficients, got {c.size}")
    tol = settings.PERIOD_TOLERANCE
    for p in range(1, max_period + 1):
        head, tail = c[:-p], c[p:]
        if np.all(np.abs(tail - head) <= tol * (1 + np.abs(head))):
            logger.debug(f"coefficients repeat with period {p}")
            return p
    return None


def expand_rational(r: RationalForm, N: int) -> np.ndarray:
    """
    Taylor coefficients c_0..c_N of N(z)/Q(z).
    """
    impulse = np.zeros(N + 1, dtype=np.complex128)
    impulse[0] = 1.0
    return lfilter(r.numerator_coeffs, r.denominator_coeffs, impulse)


def reconstruct_periodic_rational(c, p: int) -> RationalForm:
    c = _as_vector(c)
    if p < 1 or p > c.size:
        raise DegenerateInput(f"period {p} does not fit {c.size} coefficients")
    denominator = np.zeros(p + 1, dtype=np.complex128)
    denominator[0], denominator[p] = 1.0, -1.0
    candidate = RationalForm(c[:p], denominator, exact=True, period=p)

    expanded = expand_rational(candidate, c.size - 1)
    deviation = np.abs(expanded - c) / (1 + np.abs(c))
    worst = float(np.max(deviation))
    if worst > settings.PERIOD_TOLERANCE:
        raise PeriodMismatch(f"N(z)/(1 - z^{p}) misses the coefficients by {worst:.3g}")
    return RationalForm(c[:p], denominator, exact=True, residual=worst, period=p)


def _relative_residual(A: np.ndarray, b: np.ndarray, q: np.ndarray) -> float:
    norm = np.linalg.norm(b)
    return float(np.linalg.norm(A @ q + b) / norm) if norm > 0 else 0.0


def fit_rational(c, d: int) -> RationalForm:
    """
    Least-squares linear prediction c_n + q_1 c_(n-1) + ... + q_d' c_(n-d') = 0
    for d' = 1..d; the first d' within the residual limit wins.

    The last rows of the recurrence are held out of the solve; the reported
    residual is the larger of the fitted and the held-out relative residual.
    """
    c = _as_vector(c)
    if d < 1 or d > settings.MAX_FIT_DEGREE:
        raise DegenerateInput(f"denominator degree must lie in 1..{settings.MAX_FIT_DEGREE}, got {d}")
    if c.size < 4 * d:
        raise DegenerateInput(f"a degree {d} fit needs {4 * d} coefficients, got {c.size}")

    best = np.inf
    for order in range(1, d + 1):
        Xmat = toeplitz(c[order - 1:-1], c[order - 1::-1])
        xvec = c[order:]
        # equilibrate rows so growing and decaying sequences weigh alike
        scale = np.maximum(np.max(np.abs(Xmat), axis=1), np.abs(xvec))
        scale[scale == 0] = 1.0
        A, b = Xmat / scale[:, None], xvec / scale
        held = max(1, int(b.size * settings.FIT_HOLDOUT_FRACTION))
        q, *__ = np.linalg.lstsq(A[:-held], -b[:-held], rcond=None)
        residual = max(
            _relative_residual(A[:-held], b[:-held], q),
            _relative_residual(A[-held:], b[-held:], q),
        )
        logger.debug(f"linear prediction order {order}: residual {residual:.3g} ({held} rows held out)")
        best = min(best, residual)
        if residual <= settings.FIT_RESIDUAL_LIMIT and q[-1] != 0:
            denominator = np.concatenate(([1.0], q))
            numerator = np.convolve(denominator, c)[:order]
            return RationalForm(numerator, denominator, exact=False, residual=residual)
    raise IllConditioned(f"no denominator of degree <= {d} fits (best residual {best:.3g})", residual=best)


def pole_locations(r: RationalForm, tol: Optional[float] = None) -> PoleReport:
    """
    Roots of Q where N does not cancel, i.e. |N(zeta)| > 1e-6 max |N| on |z| = 1.
    """
    if r.exact:
        j = np.arange(r.period)
        roots = np.exp(2j * np.pi * j / r.period)
    else:
        roots = P.polyroots(r.denominator_coeffs)

    circle = np.exp(2j * np.pi * np.arange(_CIRCLE_SAMPLES) / _CIRCLE_SAMPLES)
    scale = float(np.max(np.abs(P.polyval(circle, r.numerator_coeffs))))
    threshold = settings.NUMERATOR_TOLERANCE * scale

    poles = []
    for zeta in np.atleast_1d(roots):
        if scale > 0 and abs(P.polyval(zeta, r.numerator_coeffs)) > threshold:
            poles.append(Pole(location=complex(zeta), residual=float(abs(P.polyval(zeta, r.denominator_coeffs)))))
    tol = settings.REAL_AXIS_TOLERANCE if tol is None else tol
    report = PoleReport(poles=poles, all_real=True, tolerance=tol)
    return PoleReport(poles=poles, all_real=classify_real_axis(report, tol), tolerance=tol)


def classify_real_axis(report: PoleReport, tol: Optional[float] = None) -> bool:
    tol = report.tolerance if tol is None else tol
    return all(abs(p.location.imag) <= tol * (1 + abs(p.location)) for p in report.poles)


def _no_poles(note: str, tol: Optional[float], notes: Optional[List[str]] = None) -> PoleAnalysis:
    tol = settings.REAL_AXIS_TOLERANCE if tol is None else tol
    report = PoleReport(poles=[], all_real=True, tolerance=tol, note=note)
    return PoleAnalysis(None, report, method="none", notes=(notes or []) + [note])


def analyze_coefficients(c, max_period: Optional[int] = None, max_degree: Optional[int] = None,
                         tol: Optional[float] = None) -> PoleAnalysis:
    """
    Exact periodic reconstruction first, least-squares fit second.

    Before fitting, the root-test estimate screens the coefficients: a zero
    radius means there is no germ to continue, and super-geometric decay
    (negative n^2 growth) or an infinite radius means f is entire. A fit is
    kept only if its nearest pole agrees with the estimated radius.
    """
    c = _as_vector(c)
    if max_period is None:
        max_period = min(settings.MAX_PERIOD, c.size // 3)
    if max_degree is None:
        max_degree = min(settings.MAX_FIT_DEGREE, c.size // 4)

    if max_period >= 1:
        p = detect_period(c, max_period)
        if p is not None:
            rational = reconstruct_periodic_rational(c, p)
            return PoleAnalysis(rational, pole_locations(rational, tol), method="periodic", notes=[f"period {p}"])

    est = None
    if c.size > settings.MIN_RADIUS_ORDER:
        est = radius_of_convergence_estimate(TruncatedTaylorSeries(c))
        if est.divergent:
            return _no_poles("radius 0: the coefficients define no analytic germ", tol)
        if est.infinite or (est.growth is not None and est.growth < -settings.ENTIRE_DECAY_MARGIN):
            logger.info(f"super-geometric decay (growth {est.growth}); treating f as entire")
            return _no_poles(NO_POLES_NOTE, tol, [f"growth {est.growth:.3g}"] if est.growth is not None else None)

    if max_degree >= 1:
        try:
            rational = fit_rational(c, max_degree)
        except IllConditioned as e:
            logger.warning(f"rational fit failed: {e.detail}")
        else:
            report = pole_locations(rational, tol)
            notes = [f"residual {rational.residual:.3g}"]
            if est is None or not report.poles:
                return PoleAnalysis(rational, report, method="fit", notes=notes)
            nearest = min(abs(p.location) for p in report.poles)
            if abs(nearest - est.radius) <= settings.POLE_AGREEMENT * est.radius:
                return PoleAnalysis(rational, report, method="fit", notes=notes + [f"radius {est.radius:.6g}"])
            logger.warning(f"fitted pole modulus {nearest:.6g} disagrees with the radius estimate {est.radius:.6g}")

    return _no_poles(NO_POLES_NOTE, tol)


def report_to_json(report: PoleReport) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "poles": [
            {"re": p.location.real, "im": p.location.imag, "residual": p.residual}
            for p in report.poles
        ],
        "all_real": report.all_real,
        "tolerance": report.tolerance,
    }
    if report.note:
        out["note"] = report.note
    return out

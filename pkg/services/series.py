"""
Hadamard algebra on truncated series, the phi isomorphism between the Laurent
side at infinity and the Taylor side at zero, evaluation and root-test radius
estimation.
"""
import logging
import math
from typing import Any, Dict, Union

import numpy as np
from numpy.polynomial import polynomial as P

from core.config import settings
from core.exceptions import DegenerateInput, InvalidSeries
from models.series import LaurentTailSeries, RadiusEstimate, TruncatedTaylorSeries

logger = logging.getLogger(__name__)

AnySeries = Union[TruncatedTaylorSeries, LaurentTailSeries]


def hadamard_product(f: TruncatedTaylorSeries, g: TruncatedTaylorSeries) -> TruncatedTaylorSeries:
    """
    Coefficientwise product f*g(z) = sum f_n g_n z^n, truncated to the shorter series.
    """
    m = min(len(f), len(g))
    return TruncatedTaylorSeries(f.coeffs[:m] * g.coeffs[:m])


def hadamard_product_laurent(f: LaurentTailSeries, g: LaurentTailSeries) -> LaurentTailSeries:
    """
    Coefficientwise product f*g(z) = sum f_n g_n / z^(n+1).
    """
    m = min(len(f), len(g))
    return LaurentTailSeries(f.coeffs[:m] * g.coeffs[:m])


def phi_map(f: LaurentTailSeries) -> TruncatedTaylorSeries:
    """
    phi(f)(z) = 1/z f(1/z): the coefficient vector is unchanged, only the
    expansion point moves from infinity to zero.
    """
    return TruncatedTaylorSeries(f.coeffs)


def phi_inverse(f: TruncatedTaylorSeries) -> LaurentTailSeries:
    return LaurentTailSeries(f.coeffs)


def evaluate(f: TruncatedTaylorSeries, z: complex) -> complex:
    """
    Horner evaluation of the partial sum at z.
    """
    if not np.isfinite(z):
        raise DegenerateInput("evaluation point must be finite")
    return complex(P.polyval(z, f.coeffs))


def evaluate_many(f: TruncatedTaylorSeries, zs: np.ndarray) -> np.ndarray:
    return P.polyval(np.asarray(zs, dtype=np.complex128), f.coeffs)


def evaluate_laurent(f: LaurentTailSeries, z: complex) -> complex:
    """
    Partial sum of sum f_n / z^(n+1), by Horner in w = 1/z.
    """
    if z == 0 or not np.isfinite(z):
        raise DegenerateInput("Laurent tails are evaluated at finite nonzero points")
    w = 1.0 / complex(z)
    return complex(w * P.polyval(w, f.coeffs))


def _quadratic_growth(n: np.ndarray, logs: np.ndarray) -> float:
    # columns in u = n / n_max keep the system well scaled
    u = n.astype(float) / float(n[-1])
    basis = np.column_stack((np.ones_like(u), u, np.log(u), u ** 2))
    coef, *_ = np.linalg.lstsq(basis, logs, rcond=None)
    return float(coef[3] * (1.0 - u[0] ** 2))


def radius_of_convergence_estimate(f: TruncatedTaylorSeries) -> RadiusEstimate:
    """
    Root-test estimate of the radius of convergence over the window [N/2, N].

    radius = 1 / max |c_n|^(1/n) on the window. A window of zeros gives an
    infinite radius. The radius is reported as 0 (divergent) when the raw
    estimate drops below the zero threshold or when log|c_n| grows
    superlinearly across the window, which is how e^(tP(n)) with a positive
    leading real part shows up before the exponent guard is reached.

    ``growth`` is the n^2 contribution across the window of a least-squares
    fit of log|c_n| on [1, n, log n, n^2]. Power-law factors n^k land in the
    log n column, so only genuine quadratic growth or decay moves it.
    """
    N = f.truncation_order
    if N < settings.MIN_RADIUS_ORDER:
        raise DegenerateInput(f"radius estimation needs order >= {settings.MIN_RADIUS_ORDER}, got {N}")

    lo = N // 2
    window = (lo, N)
    n = np.arange(max(lo, 1), N + 1)
    mags = np.abs(f.coeffs[n])
    nonzero = mags > 0
    if not np.any(nonzero):
        return RadiusEstimate(radius=math.inf, window=window, uncertainty=0.0, infinite=True)

    n, mags = n[nonzero], mags[nonzero]
    logs = np.log(mags)
    roots = np.exp(logs / n)
    top = float(np.max(roots))
    uncertainty = float((top - np.min(roots)) / top)

    growth = None
    if n.size >= 5:
        growth = _quadratic_growth(n, logs)
        if growth > settings.RADIUS_GROWTH_MARGIN:
            logger.debug(f"superlinear coefficient growth {growth:.3g} on window {window}")
            return RadiusEstimate(
                radius=0.0, window=window, uncertainty=uncertainty, divergent=True, growth=growth
            )

    radius = 1.0 / top
    if radius < settings.ZERO_RADIUS_THRESHOLD:
        return RadiusEstimate(radius=0.0, window=window, uncertainty=uncertainty, divergent=True, growth=growth)
    return RadiusEstimate(radius=radius, window=window, uncertainty=uncertainty, growth=growth)


def series_to_json(f: AnySeries) -> Dict[str, Any]:
    return {
        "order": f.truncation_order,
        "coeffs": [[float(c.real), float(c.imag)] for c in f.coeffs],
    }


def series_from_json(data: Dict[str, Any], laurent: bool = False) -> AnySeries:
    try:
        order = int(data["order"])
        coeffs = [complex(float(re), float(im)) for re, im in data["coeffs"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidSeries(f"malformed series JSON: {e}")
    if len(coeffs) != order + 1:
        raise InvalidSeries(f"order {order} needs {order + 1} coefficients, got {len(coeffs)}")
    cls = LaurentTailSeries if laurent else TruncatedTaylorSeries
    return cls(coeffs)

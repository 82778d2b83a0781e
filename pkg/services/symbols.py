"""
Evaluation and arithmetic of multiplier symbols and their action on series.
"""
import logging
from fractions import Fraction
from itertools import zip_longest

import numpy as np

from core.config import settings
from core.exceptions import CoefficientOverflow, IndexOutOfRange, VariantMismatch
from models.scalars import ExactScalar, format_scalar
from models.series import LaurentTailSeries, TruncatedTaylorSeries
from models.symbols import EulerPoly, Explicit, HardyRational, MultiplierSymbol

logger = logging.getLogger(__name__)


def exact_eval(s: MultiplierSymbol, n: int) -> ExactScalar:
    """
    m_n as an exact scalar, for Euler and Hardy symbols.
    """
    if isinstance(s, EulerPoly):
        acc = ExactScalar()
        for a in reversed(s.coeffs):
            acc = acc * n + a
        return acc
    if isinstance(s, HardyRational):
        u = Fraction(1, n + 1)
        acc = ExactScalar()
        for a in reversed(s.coeffs):
            acc = acc * u + a
        return acc
    raise VariantMismatch("explicit symbols have no exact values")


def symbol_eval(s: MultiplierSymbol, n: int) -> complex:
    """
    m_n as a complex number, rounded once from the exact value.
    """
    if n < 0:
        raise IndexOutOfRange(f"multiplier index must be nonnegative, got {n}")
    if isinstance(s, Explicit):
        if n >= len(s):
            raise IndexOutOfRange(f"explicit symbol has {len(s)} entries, index {n} requested")
        return complex(s.seq[n])
    return complex(exact_eval(s, n))


def symbol_sequence(s: MultiplierSymbol, N: int) -> np.ndarray:
    """
    (m_0, ..., m_N) as a complex vector.
    """
    if isinstance(s, Explicit):
        if N >= len(s):
            raise IndexOutOfRange(f"explicit symbol has {len(s)} entries, order {N} requested")
        return np.array(s.seq[: N + 1], dtype=np.complex128)
    return np.array([symbol_eval(s, n) for n in range(N + 1)], dtype=np.complex128)


def symbol_add(s1: MultiplierSymbol, s2: MultiplierSymbol) -> MultiplierSymbol:
    """
    Coefficientwise exact sum of two symbols of the same kind.
    """
    if type(s1) is not type(s2):
        raise VariantMismatch(f"cannot add {type(s1).__name__} and {type(s2).__name__}")
    if isinstance(s1, Explicit):
        m = min(len(s1), len(s2))
        return Explicit(s1.seq[:m] + s2.seq[:m])
    coeffs = tuple(
        a + b for a, b in zip_longest(s1.coeffs, s2.coeffs, fillvalue=ExactScalar())
    )
    return type(s1)(coeffs)


def _guarded_exponents(s: MultiplierSymbol, t: float, N: int) -> np.ndarray:
    exponents = t * symbol_sequence(s, N)
    over = np.nonzero(np.abs(exponents.real) > settings.EXPONENT_LIMIT)[0]
    if over.size:
        n = int(over[0])
        raise CoefficientOverflow(n, float(exponents[n].real))
    return exponents


def exp_scaled_coefficients(s: MultiplierSymbol, t: float, N: int) -> TruncatedTaylorSeries:
    """
    f_t(z) = sum exp(t m_n) z^n, truncated at order N.
    """
    return TruncatedTaylorSeries(np.exp(_guarded_exponents(s, t, N)))


def exp_scaled_laurent(s: MultiplierSymbol, t: float, N: int) -> LaurentTailSeries:
    """
    The Laurent-side companion sum exp(t m_n) / z^(n+1).
    """
    return LaurentTailSeries(np.exp(_guarded_exponents(s, t, N)))


def apply_multiplier(s: MultiplierSymbol, f: TruncatedTaylorSeries) -> TruncatedTaylorSeries:
    """
    Action of the multiplier on a Taylor expansion: f_n -> m_n f_n.
    """
    return TruncatedTaylorSeries(symbol_sequence(s, f.truncation_order) * f.coeffs)


def _coeff_prefix(a: ExactScalar) -> str:
    if a == ExactScalar.of(1):
        return ""
    if a == ExactScalar.imag_unit():
        return "i*"
    return f"{format_scalar(a)}*"


def format_symbol(s: MultiplierSymbol) -> str:
    """
    Canonical operator-DSL text for a symbol.
    """
    if isinstance(s, EulerPoly):
        terms = []
        for k in range(s.degree, -1, -1):
            a = s.coeffs[k]
            if a.is_zero():
                continue
            if k == 0:
                terms.append(format_scalar(a))
            elif k == 1:
                terms.append(f"{_coeff_prefix(a)}theta")
            else:
                terms.append(f"{_coeff_prefix(a)}theta^{k}")
        return "euler: " + (" + ".join(terms) or "0")
    if isinstance(s, HardyRational):
        terms = []
        for k, a in enumerate(s.coeffs):
            if a.is_zero():
                continue
            if k == 0:
                terms.append(format_scalar(a))
            else:
                power = "(n+1)" if k == 1 else f"(n+1)^{k}"
                terms.append(f"{format_scalar(a)}/{power}")
        return "hardy: " + (" + ".join(terms) or "0")
    entries = []
    for c in s.seq:
        if c.imag == 0:
            entries.append(repr(float(c.real)))
        else:
            entries.append(f"({float(c.real)!r} + {float(c.imag)!r}*i)")
    return "seq: [" + ", ".join(entries) + "]"

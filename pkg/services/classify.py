"""
Decide whether a multiplier symbol generates a C0-semigroup on the real
analytic functions, and back every decided verdict with a certificate.

Decided cases:
    * Hardy rational symbols generate a C0-group.
    * a*theta + b generates iff a is real.
    * degree >= 2 Euler polynomials fail when the leading nonvanishing real
      part (at degree >= 2) is positive, or when all coefficients of degree
      >= 2 lie in iQ (rational or quadratic-surd imaginary a_1).
Everything else is Unknown.
"""
import logging
import math
from dataclasses import fields, is_dataclass
from functools import reduce
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from core.config import settings
from core.exceptions import DegenerateInput, NoOffAxisPole, PeriodicityViolation, WitnessNotFound
from models.scalars import ExactScalar
from models.symbols import EulerPoly, Explicit, HardyRational, MultiplierSymbol
from models.verdict import (
    BlowUp,
    ClosedFormDilation,
    GenerationVerdict,
    IrrationalRotation,
    MellinWitnessRef,
    Reason,
    RootOfUnityPole,
    SumOf,
    VerdictKind,
    Witness,
)
from services.mellin import default_halfplane
from services.symbols import exact_eval

logger = logging.getLogger(__name__)


def classify(s: MultiplierSymbol) -> GenerationVerdict:
    """
    Generation verdict for a symbol; Unknown wherever no theorem applies.
    """
    if isinstance(s, HardyRational):
        omega = default_halfplane()
        cert = MellinWitnessRef(
            a=settings.HARDY_EXPONENT,
            omega_params={"kappas": list(omega.kappas), "Ks": list(omega.Ks)},
        )
        return GenerationVerdict(VerdictKind.GENERATES, Reason.HARDY_GROUP, cert, group=True)
    if isinstance(s, Explicit):
        return GenerationVerdict.unknown("explicit sequences are not covered by a theorem")
    if s.degree <= 1:
        return _classify_first_order(s)
    return _classify_higher_order(s)


def _classify_first_order(s: EulerPoly) -> GenerationVerdict:
    a1, b = s.coeff(1), s.coeff(0)
    if a1.is_real():
        cert = ClosedFormDilation(a=float(a1.re), b=complex(b))
        logger.info(f"first-order Euler symbol with real a={cert.a} generates a C0-group")
        return GenerationVerdict(VerdictKind.GENERATES, Reason.EULER1, cert, group=True)
    return GenerationVerdict(VerdictKind.NOT_GENERATES, Reason.EULER1, _dilation_pole(a1))


def _dilation_pole(a: ExactScalar) -> IrrationalRotation:
    # f_t = 1/(1 - z e^(ta)); first sample t whose pole leaves the real axis
    value = complex(a)
    t = 1.0
    for _ in range(32):
        if abs(t * value.real) <= settings.EXPONENT_LIMIT:
            pole = complex(np.exp(-t * value))
            if abs(pole.imag) > settings.NUMERATOR_TOLERANCE * abs(pole):
                return IrrationalRotation(r_description=a, pole=pole, t0=t)
        t /= 2
    pole = complex(np.exp(-t * value))
    return IrrationalRotation(r_description=a, pole=pole, t0=t)


def _leading_real_index(s: EulerPoly) -> Optional[int]:
    for k in range(s.degree, -1, -1):
        if s.coeffs[k].re.sign() != 0:
            return k
    return None


def _classify_higher_order(s: EulerPoly) -> GenerationVerdict:
    l = _leading_real_index(s)
    if l is not None and l >= 2:
        if s.coeffs[l].re.sign() > 0:
            cert = blow_up_certificate(s, l)
            logger.info(f"Re a_{l} > 0: coefficients of f_t grow like exp(n^{l}), no semigroup")
            return GenerationVerdict(VerdictKind.NOT_GENERATES, Reason.NEG_CASE1, cert)
        return GenerationVerdict.unknown(f"leading real part Re a_{l} is negative")

    if not all(s.coeff(k).is_in_iQ() for k in range(2, s.degree + 1)):
        return GenerationVerdict.unknown("an imaginary coefficient of degree >= 2 is irrational")

    # b_1 theta + c with real b_1 and complex c generates a group; split it off
    im1 = s.coeff(1).im
    if im1.is_rational():
        imaginary = EulerPoly(
            (ExactScalar(), ExactScalar(im_rat=im1.rat))
            + tuple(ExactScalar(im_rat=s.coeff(k).im_rat) for k in range(2, s.degree + 1))
        )
        witness = find_witness(imaginary)
        numerator = build_periodic_numerator(witness.ptilde, witness.q)
        try:
            cert = certify_offaxis_pole(numerator, witness.q, witness)
        except NoOffAxisPole as e:
            logger.warning(f"witness q={witness.q} found no off-axis pole: {e.detail}")
            return GenerationVerdict.unknown("witness numerator vanishes at every non-real root of unity")
        logger.info(f"witness t0=S*pi/q with S={witness.S}, q={witness.q}, pole at {cert.pole:.6g}")
        return GenerationVerdict(VerdictKind.NOT_GENERATES, Reason.NEG_CASE2, cert,
                                 notes=_split_notes(s, cert.pole, cert.t0))

    S = _common_denominator(s.coeff(k).im_rat for k in range(2, s.degree + 1))
    t0 = 2 * S * math.pi
    r = s.coeff(1).imag_part()
    pole = complex(np.exp(-1j * t0 * float(im1)))
    logger.info(f"irrational rotation at t0=2*S*pi with S={S}")
    return GenerationVerdict(
        VerdictKind.NOT_GENERATES,
        Reason.NEG_IRRATIONAL_ROTATION,
        IrrationalRotation(r_description=r, pole=pole, t0=t0),
        notes=_split_notes(s, pole, t0),
    )


def _split_notes(s: EulerPoly, pole: complex, t0: float) -> Tuple[str, ...]:
    """
    Certificates describe the imaginary part of s. A split-off real b_1 theta
    scales the pole of f_t0 for s itself by e^(-t0 b_1); the constant only
    rescales f_t0.
    """
    b1 = float(s.coeff(1).re)
    if b1 == 0:
        return ()
    shifted = pole * math.exp(-t0 * b1)
    return (
        f"pole {pole:.6g} belongs to the imaginary part; f_t0 of the full symbol "
        f"has it at {shifted:.6g} (scaled by exp(-t0 * {b1:.6g}))",
    )


def blow_up_certificate(s: EulerPoly, l: int) -> BlowUp:
    """
    Growth evidence |e^(tP(n))|^(1/n) = e^(t Re P(n) / n), strictly increasing.
    """
    start = 1
    while start <= 2 ** 20:
        sample_n = tuple(start * 2 ** k for k in range(5))
        raw = [float(exact_eval(s, n).re) / n for n in sample_n]
        if all(x < y for x, y in zip(raw, raw[1:])) and raw[-1] > 0:
            t = min(settings.BLOWUP_TIME, settings.EXPONENT_LIMIT / raw[-1])
            growth = tuple(math.exp(t * x) for x in raw)
            if all(x < y for x, y in zip(growth, growth[1:])):
                return BlowUp(l=l, t=t, sample_n=sample_n, growth=growth)
        start *= 2
    raise DegenerateInput("no increasing growth window found for the blow-up certificate")


def _common_denominator(values: Sequence) -> int:
    return reduce(lambda acc, v: acc * v.denominator // math.gcd(acc, v.denominator), values, 1)


def _ptilde_eval(ptilde: Sequence[int], n: int) -> int:
    acc = 0
    for c in reversed(ptilde):
        acc = acc * n + c
    return acc


def find_witness(p: EulerPoly) -> Witness:
    """
    Search for n0 with |Ptilde(n0+2)| = q > 2 and Ptilde(n0) != Ptilde(n0+2) mod 2q,
    where m_n = (i/S) Ptilde(n) and S is the common denominator.
    """
    if p.degree < 2:
        raise DegenerateInput("the witness search needs degree >= 2")
    if not p.coeff(0).is_zero():
        raise DegenerateInput("split off the constant term before the witness search")
    if not all(a.is_in_iQ() for a in p.coeffs[1:]):
        raise DegenerateInput("the witness search needs coefficients in iQ")

    im = [a.im_rat for a in p.coeffs]
    S = _common_denominator(im[1:])
    ptilde = tuple(int(x * S) for x in im)
    limit = settings.WITNESS_SEARCH_LIMIT

    current, ahead = _ptilde_eval(ptilde, 0), _ptilde_eval(ptilde, 2)
    for n0 in range(limit + 1):
        q = abs(ahead)
        if q > 2 and (current - ahead) % (2 * q) != 0:
            t0 = S * math.pi / q
            logger.debug(f"witness n0={n0}, q={q}, S={S}")
            return Witness(S=S, ptilde=ptilde, n0=n0, q=q, t0=t0)
        current, ahead = _ptilde_eval(ptilde, n0 + 1), _ptilde_eval(ptilde, n0 + 3)
    raise WitnessNotFound(f"no n0 <= {limit} satisfies the witness conditions")


def build_periodic_numerator(ptilde: Sequence[int], q: int) -> np.ndarray:
    """
    xi_n = exp(Ptilde(n) pi i / q) for n = 0..2q-1, with the period checked exactly.
    """
    if q < 3:
        raise DegenerateInput(f"the periodic numerator needs q > 2, got {q}")
    period = 2 * q
    residues = []
    for n in range(period):
        r = _ptilde_eval(ptilde, n) % period
        if _ptilde_eval(ptilde, n + period) % period != r:
            raise PeriodicityViolation(f"Ptilde({n} + {period}) differs from Ptilde({n}) mod {period}")
        residues.append(r)
    return np.exp(1j * np.pi * np.array(residues, dtype=float) / q)


def certify_offaxis_pole(numerator: np.ndarray, q: int, witness: Optional[Witness] = None) -> RootOfUnityPole:
    """
    First non-real 2q-th root of unity where the numerator does not vanish.
    """
    period = 2 * q
    numerator = np.asarray(numerator, dtype=np.complex128)
    if numerator.size != period:
        raise DegenerateInput(f"numerator needs {period} entries, got {numerator.size}")
    S, n0, t0 = (witness.S, witness.n0, witness.t0) if witness else (1, 0, math.pi / q)
    for j in range(1, period):
        if j == q:
            continue
        zeta = complex(np.exp(1j * np.pi * j / q))
        value = abs(complex(P.polyval(zeta, numerator)))
        if value > settings.NUMERATOR_TOLERANCE:
            return RootOfUnityPole(
                S=S, q=q, n0=n0, t0=t0, period=period, pole=zeta, numerator_abs=value, root_index=j
            )
    raise NoOffAxisPole(f"the numerator vanishes at every non-real {period}-th root of unity")


def classify_sum(v1: GenerationVerdict, v2: GenerationVerdict) -> GenerationVerdict:
    """
    Generators are closed under addition; nothing else follows.
    """
    if v1.generates and v2.generates:
        return GenerationVerdict(
            VerdictKind.GENERATES,
            Reason.ADDITIVITY,
            SumOf(v1.certificate, v2.certificate),
            group=v1.group and v2.group,
        )
    return GenerationVerdict.unknown("additivity only transfers generation")


def _jsonable(value: Any) -> Any:
    if isinstance(value, ExactScalar):
        return value.to_json()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if is_dataclass(value):
        out = {"type": type(value).__name__}
        out.update({f.name: _jsonable(getattr(value, f.name)) for f in fields(value)})
        return out
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def verdict_to_json(v: GenerationVerdict) -> Dict[str, Any]:
    """
    {"verdict", "reason", "group", "certificate", "notes"}; exact fields as "p/q".
    """
    return {
        "verdict": v.kind.value,
        "reason": v.reason.value,
        "group": v.group,
        "certificate": _jsonable(v.certificate) if v.certificate is not None else None,
        "notes": list(v.notes),
    }

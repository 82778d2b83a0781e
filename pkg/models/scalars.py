"""
Exact complex scalars with rational parts and one optional quadratic surd.

A value is (re_rat + re_surd*sqrt(d)) + i*(im_rat + im_surd*sqrt(d)) with
rationals held as ``fractions.Fraction`` and d square-free. Membership in iQ
and the sign of a real part are decidable for these numbers, which is what the
classifier needs.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, Union

from sympy import factorint

from core.exceptions import DegenerateInput, IncompatibleSurd

Rational = Union[int, Fraction]


@lru_cache(maxsize=256)
def square_free_split(n: int) -> Tuple[int, int]:
    """
    Write n = s^2 * d with d square-free; returns (s, d).
    """
    if n < 0:
        raise DegenerateInput(f"sqrt of negative integer {n} is not a surd")
    if n == 0:
        return 0, 1
    s, d = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def _merge_d(d1: int, d2: int) -> int:
    if d1 == 0:
        return d2
    if d2 == 0 or d1 == d2:
        return d1
    raise IncompatibleSurd(f"cannot combine sqrt({d1}) and sqrt({d2}) in one scalar")


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuadraticSurd:
    """
    Real number rat + surd*sqrt(d); d == 0 means no surd part.
    """
    rat: Fraction = Fraction(0)
    surd: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "surd", Fraction(self.surd))
        if self.d == 1:
            object.__setattr__(self, "rat", self.rat + self.surd)
            object.__setattr__(self, "surd", Fraction(0))
            object.__setattr__(self, "d", 0)
        if self.surd == 0:
            object.__setattr__(self, "d", 0)
        elif self.d == 0:
            raise DegenerateInput("surd coefficient without a radicand")

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticSurd":
        s, d = square_free_split(n)
        if d == 1:
            return cls(Fraction(s))
        return cls(Fraction(0), Fraction(s), d)

    def is_zero(self) -> bool:
        return self.rat == 0 and self.surd == 0

    def is_rational(self) -> bool:
        return self.surd == 0

    def __add__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        d = _merge_d(self.d, other.d)
        return QuadraticSurd(self.rat + other.rat, self.surd + other.surd, d)

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.rat, -self.surd, self.d)

    def __sub__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        return self + (-other)

    def __mul__(self, other: "QuadraticSurd") -> "QuadraticSurd":
        d = _merge_d(self.d, other.d)
        rat = self.rat * other.rat + self.surd * other.surd * d
        surd = self.rat * other.surd + self.surd * other.rat
        return QuadraticSurd(rat, surd, d)

    def conjugate_surd(self) -> "QuadraticSurd":
        return QuadraticSurd(self.rat, -self.surd, self.d)

    def norm(self) -> Fraction:
        # (x + y sqrt d)(x - y sqrt d)
        return self.rat * self.rat - self.surd * self.surd * self.d

    def inverse(self) -> "QuadraticSurd":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero surd")
        n = self.norm()
        c = self.conjugate_surd()
        return QuadraticSurd(c.rat / n, c.surd / n, c.d)

    def sign(self) -> int:
        """
        Exact sign of rat + surd*sqrt(d).
        """
        sr = (self.rat > 0) - (self.rat < 0)
        ss = (self.surd > 0) - (self.surd < 0)
        if ss == 0:
            return sr
        if sr == 0 or sr == ss:
            return ss
        # opposite signs: compare rat^2 with surd^2 * d
        lhs = self.rat * self.rat
        rhs = self.surd * self.surd * self.d
        return sr if lhs > rhs else ss

    def __float__(self) -> float:
        if self.d == 0:
            return float(self.rat)
        return float(self.rat) + float(self.surd) * math.sqrt(self.d)


@dataclass(frozen=True)
class ExactScalar:
    """
    Exact complex number with rational parts and one quadratic surd sqrt(d).
    """
    re_rat: Fraction = Fraction(0)
    re_surd: Fraction = Fraction(0)
    im_rat: Fraction = Fraction(0)
    im_surd: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        re = QuadraticSurd(self.re_rat, self.re_surd, self.d if self.re_surd else 0)
        im = QuadraticSurd(self.im_rat, self.im_surd, self.d if self.im_surd else 0)
        object.__setattr__(self, "re_rat", re.rat)
        object.__setattr__(self, "re_surd", re.surd)
        object.__setattr__(self, "im_rat", im.rat)
        object.__setattr__(self, "im_surd", im.surd)
        object.__setattr__(self, "d", _merge_d(re.d, im.d))

    @classmethod
    def from_parts(cls, re: QuadraticSurd, im: QuadraticSurd) -> "ExactScalar":
        d = _merge_d(re.d, im.d)
        return cls(re.rat, re.surd, im.rat, im.surd, d)

    @classmethod
    def of(cls, value: Rational) -> "ExactScalar":
        return cls(re_rat=Fraction(value))

    @classmethod
    def imag_unit(cls) -> "ExactScalar":
        return cls(im_rat=Fraction(1))

    @classmethod
    def sqrt(cls, n: int) -> "ExactScalar":
        return cls.from_parts(QuadraticSurd.sqrt(n), QuadraticSurd())

    @property
    def re(self) -> QuadraticSurd:
        return QuadraticSurd(self.re_rat, self.re_surd, self.d if self.re_surd else 0)

    @property
    def im(self) -> QuadraticSurd:
        return QuadraticSurd(self.im_rat, self.im_surd, self.d if self.im_surd else 0)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_in_iQ(self) -> bool:
        return self.re_rat == 0 and self.re_surd == 0 and self.im_surd == 0

    def real_part(self) -> "ExactScalar":
        return ExactScalar.from_parts(self.re, QuadraticSurd())

    def imag_part(self) -> "ExactScalar":
        """
        Im as a real ExactScalar.
        """
        return ExactScalar.from_parts(self.im, QuadraticSurd())

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        other = _coerce(other)
        return ExactScalar.from_parts(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar.from_parts(-self.re, -self.im)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other: "ExactScalar") -> "ExactScalar":
        return _coerce(other) - self

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        other = _coerce(other)
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return ExactScalar.from_parts(re, im)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactScalar":
        return ExactScalar.from_parts(self.re, -self.im)

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by exact zero")
        mod2 = self.re * self.re + self.im * self.im
        inv = mod2.inverse()
        c = self.conjugate()
        return ExactScalar.from_parts(c.re * inv, c.im * inv)

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other: "ExactScalar") -> "ExactScalar":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "ExactScalar":
        if k < 0:
            return (self ** -k).inverse()
        result, base = ExactScalar.of(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {
            "re_rat": _frac_str(self.re_rat),
            "re_surd": _frac_str(self.re_surd),
            "im_rat": _frac_str(self.im_rat),
            "im_surd": _frac_str(self.im_surd),
            "d": self.d,
        }

    def __str__(self) -> str:
        return format_scalar(self)


def _coerce(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.of(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _format_surd(x: QuadraticSurd) -> str:
    parts = []
    if x.rat != 0 or x.surd == 0:
        parts.append(str(x.rat))
    if x.surd != 0:
        parts.append(f"{x.surd}*sqrt({x.d})")
    return " + ".join(parts)


def format_scalar(x: ExactScalar) -> str:
    """
    DSL literal for x, always parenthesised unless it is a plain rational.
    """
    if x.is_real() and x.re.is_rational():
        return str(x.re_rat)
    pieces = []
    if not x.re.is_zero():
        pieces.append(_format_surd(x.re))
    if not x.im.is_zero():
        im = x.im
        if im.is_rational():
            pieces.append(f"{im.rat}*i")
        else:
            pieces.append(f"({_format_surd(im)})*i")
    return "(" + " + ".join(pieces) + ")"

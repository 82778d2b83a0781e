"""
Tests for exact scalars, multiplier symbols and their action on series.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

from core.exceptions import CoefficientOverflow, IncompatibleSurd, IndexOutOfRange, VariantMismatch
from models.scalars import ExactScalar, QuadraticSurd, format_scalar, square_free_split
from models.series import TruncatedTaylorSeries
from models.symbols import EulerPoly, Explicit, HardyRational
from services.series import hadamard_product, phi_inverse
from services.symbols import (
    apply_multiplier,
    exact_eval,
    exp_scaled_coefficients,
    exp_scaled_laurent,
    format_symbol,
    symbol_add,
    symbol_eval,
    symbol_sequence,
)

ONE = ExactScalar.of(1)
I = ExactScalar.imag_unit()
ZERO = ExactScalar()


class TestScalars:
    def test_square_free_split(self):
        assert square_free_split(72) == (6, 2)
        assert square_free_split(1) == (1, 1)

    def test_sqrt_normalises(self):
        assert QuadraticSurd.sqrt(8) == QuadraticSurd(Fraction(0), Fraction(2), 2)
        assert QuadraticSurd.sqrt(9) == QuadraticSurd(Fraction(3))

    def test_i_squared(self):
        assert I * I == ExactScalar.of(-1)

    def test_incompatible_surds(self):
        with pytest.raises(IncompatibleSurd):
            ExactScalar.sqrt(2) + ExactScalar.sqrt(3)

    @pytest.mark.parametrize(
        "rat, surd, expected",
        [
            (Fraction(-1), Fraction(1), 1),       # sqrt(2) - 1
            (Fraction(3, 2), Fraction(-1), 1),    # 3/2 - sqrt(2)
            (Fraction(7, 5), Fraction(-1), -1),   # 7/5 - sqrt(2)
            (Fraction(0), Fraction(0), 0),
        ],
    )
    def test_exact_sign(self, rat, surd, expected):
        assert QuadraticSurd(rat, surd, 2).sign() == expected

    def test_inverse(self):
        x = ExactScalar(re_rat=Fraction(1), im_surd=Fraction(1), d=2)
        assert x * x.inverse() == ONE

    def test_iq_membership(self):
        assert ExactScalar(im_rat=Fraction(3, 4)).is_in_iQ()
        assert not ExactScalar(im_surd=Fraction(1), d=2).is_in_iQ()
        assert not ExactScalar(re_rat=Fraction(1), im_rat=Fraction(1)).is_in_iQ()

    def test_format(self):
        assert format_scalar(ExactScalar.of(Fraction(1, 2))) == "1/2"
        assert format_scalar(ExactScalar(re_rat=Fraction(3), im_rat=Fraction(1))) == "(3 + 1*i)"

    def test_json_fields_are_fractions(self):
        data = ExactScalar(re_rat=Fraction(1, 3), im_surd=Fraction(2), d=5).to_json()
        assert data == {"re_rat": "1/3", "re_surd": "0/1", "im_rat": "0/1", "im_surd": "2/1", "d": 5}


class TestEvaluation:
    def test_euler_exact(self):
        # i theta^2 + 3 theta at n = 2
        s = EulerPoly((ZERO, ExactScalar.of(3), I))
        assert exact_eval(s, 2) == ExactScalar(re_rat=Fraction(6), im_rat=Fraction(4))
        assert symbol_eval(s, 2) == 6 + 4j

    def test_hardy_exact(self):
        # 1 + 2/(n+1)^2 at n = 1
        s = HardyRational((ONE, ZERO, ExactScalar.of(2)))
        assert exact_eval(s, 1) == ExactScalar.of(Fraction(3, 2))

    def test_explicit_range(self):
        s = Explicit(np.array([1.0, 2.0]))
        assert symbol_eval(s, 1) == 2
        with pytest.raises(IndexOutOfRange):
            symbol_eval(s, 2)

    def test_negative_index(self):
        with pytest.raises(IndexOutOfRange):
            symbol_eval(EulerPoly((ONE,)), -1)

    def test_explicit_has_no_exact_value(self):
        with pytest.raises(VariantMismatch):
            exact_eval(Explicit(np.array([1.0])), 0)

    def test_sequence(self):
        s = EulerPoly((ZERO, ONE))
        np.testing.assert_array_equal(symbol_sequence(s, 4), np.arange(5))

    def test_trailing_zeros_stripped(self):
        assert EulerPoly((ONE, ZERO, ZERO)).degree == 0


class TestAddition:
    def test_euler_sum(self):
        s = symbol_add(EulerPoly((ZERO, ONE)), EulerPoly((ExactScalar.of(Fraction(1, 2)),)))
        assert s == EulerPoly((ExactScalar.of(Fraction(1, 2)), ONE))

    def test_explicit_sum_truncates(self):
        s = symbol_add(Explicit(np.array([1.0, 2.0, 3.0])), Explicit(np.array([1.0, 1.0])))
        assert s == Explicit(np.array([2.0, 3.0]))

    def test_mixed_kinds(self):
        with pytest.raises(VariantMismatch):
            symbol_add(EulerPoly((ONE,)), HardyRational((ONE,)))

    @pytest.mark.parametrize(
        "s1, s2",
        [
            (EulerPoly((ZERO, ExactScalar.of(3), I)), EulerPoly((ExactScalar.of(Fraction(1, 2)), ZERO, ZERO, I))),
            (HardyRational((ONE, ExactScalar.of(2))), HardyRational((ZERO, ZERO, I))),
        ],
    )
    def test_sum_is_pointwise(self, s1, s2):
        total = symbol_add(s1, s2)
        for n in range(65):
            assert symbol_eval(total, n) == pytest.approx(symbol_eval(s1, n) + symbol_eval(s2, n), rel=1e-12)


class TestExpScaling:
    def test_dilation_coefficients(self):
        f = exp_scaled_coefficients(EulerPoly((ZERO, ONE)), 0.5, 8)
        np.testing.assert_allclose(f.coeffs, np.exp(0.5 * np.arange(9)), rtol=1e-15)

    def test_overflow_reports_index(self):
        with pytest.raises(CoefficientOverflow) as info:
            exp_scaled_coefficients(EulerPoly((ZERO, ZERO, ONE)), 1.0, 30)
        assert info.value.n == 27

    def test_times_add_under_hadamard_product(self):
        s = EulerPoly((ZERO, ExactScalar.of(Fraction(1, 2)), I))
        joint = exp_scaled_coefficients(s, 0.7, 32)
        split = hadamard_product(exp_scaled_coefficients(s, 0.3, 32), exp_scaled_coefficients(s, 0.4, 32))
        np.testing.assert_allclose(split.coeffs, joint.coeffs, rtol=1e-12)

    def test_laurent_side(self):
        s = HardyRational((ZERO, ONE))
        assert exp_scaled_laurent(s, 1.0, 16) == phi_inverse(exp_scaled_coefficients(s, 1.0, 16))

    def test_apply_multiplier(self):
        f = TruncatedTaylorSeries([1, 1, 1])
        g = apply_multiplier(EulerPoly((ZERO, ZERO, ONE)), f)
        assert g == TruncatedTaylorSeries([0, 1, 4])

    @pytest.mark.parametrize(
        "symbol",
        [
            EulerPoly((ONE, ExactScalar.of(Fraction(-3, 2)), I)),
            HardyRational((ExactScalar.of(2), I)),
            Explicit(np.linspace(-1, 1, 17) + 0.5j),
        ],
    )
    def test_apply_multiplier_is_linear(self, symbol):
        rng = np.random.default_rng(7)
        f = TruncatedTaylorSeries(rng.normal(size=17) + 1j * rng.normal(size=17))
        g = TruncatedTaylorSeries(rng.normal(size=17))
        alpha, beta = 0.75 - 2j, -1.25
        combined = apply_multiplier(symbol, f * alpha + g * beta).coeffs
        expected = alpha * apply_multiplier(symbol, f).coeffs + beta * apply_multiplier(symbol, g).coeffs
        np.testing.assert_allclose(combined, expected, rtol=1e-12, atol=1e-12 * np.max(np.abs(expected)))

    def test_hardy_time_one(self):
        f = exp_scaled_coefficients(HardyRational((ZERO, ONE)), 1.0, 3)
        assert f.coeffs[1] == pytest.approx(math.exp(0.5))


class TestFormatting:
    def test_euler(self):
        s = EulerPoly((ZERO, ExactScalar.of(3), I))
        assert format_symbol(s) == "euler: i*theta^2 + 3*theta"

    def test_hardy(self):
        s = HardyRational((ONE, ZERO, ExactScalar.of(2)))
        assert format_symbol(s) == "hardy: 1 + 2/(n+1)^2"

    def test_zero(self):
        assert format_symbol(EulerPoly((ZERO,))) == "euler: 0"

    def test_explicit(self):
        assert format_symbol(Explicit(np.array([1.0, 0.5]))) == "seq: [1.0, 0.5]"

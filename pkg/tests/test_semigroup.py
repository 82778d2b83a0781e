"""
Tests for T_t on truncated series and the semigroup probes.
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from core.exceptions import CoefficientOverflow, DomainExceeded, InvalidParameter
from models.scalars import ExactScalar
from models.semigroup import SemigroupEvaluator
from models.series import TruncatedTaylorSeries
from models.symbols import EulerPoly, HardyRational
from models.verdict import ClosedFormDilation
from services.semigroup import (
    check_group_law,
    check_semigroup_law,
    euler_closed_form_evolve,
    evolve,
    generator_finite_difference,
    generator_steps,
    strong_continuity_probe,
)

ZERO = ExactScalar()
ONE = ExactScalar.of(1)

DILATION = EulerPoly((ZERO, ONE))
HARDY = HardyRational((ZERO, ONE))


def exp_series(order: int) -> TruncatedTaylorSeries:
    return TruncatedTaylorSeries([1 / math.factorial(k) for k in range(order + 1)])


@st.composite
def real_series(draw, order: int = 64):
    """Random real coefficients in [-1, 1]."""
    values = draw(st.lists(st.floats(-1, 1, allow_nan=False), min_size=order + 1, max_size=order + 1))
    return TruncatedTaylorSeries(values)


class TestEvolve:
    def test_identity_at_zero(self):
        f = exp_series(16)
        assert evolve(SemigroupEvaluator.for_symbol(DILATION), 0.0, f) == f

    def test_monomial_is_an_eigenvector(self):
        f = TruncatedTaylorSeries.monomial(2, 4)
        g = evolve(SemigroupEvaluator(DILATION), 0.5, f)
        assert g.coeffs[2] == pytest.approx(math.e)
        assert np.count_nonzero(g.coeffs) == 1

    def test_hardy(self):
        g = evolve(SemigroupEvaluator(HARDY), 1.0, exp_series(8))
        expected = [math.exp(1 / (k + 1)) / math.factorial(k) for k in range(9)]
        np.testing.assert_allclose(g.coeffs, expected, rtol=1e-14)

    def test_dilation_by_log_two(self):
        g = euler_closed_form_evolve(1.0, 0j, math.log(2), exp_series(30))
        expected = [2.0 ** k / math.factorial(k) for k in range(31)]
        np.testing.assert_allclose(g.coeffs, expected, rtol=1e-12)

    @pytest.mark.parametrize("t", [0.1, 1.0, 2.0])
    def test_closed_form_matches_multiplier(self, t):
        s = EulerPoly((ExactScalar.of(Fraction(3, 10)), ExactScalar.of(Fraction(7, 10))))
        f = TruncatedTaylorSeries(np.cos(np.arange(65)))
        np.testing.assert_allclose(
            euler_closed_form_evolve(0.7, 0.3, t, f).coeffs,
            evolve(SemigroupEvaluator(s), t, f).coeffs,
            rtol=1e-12,
        )

    def test_closed_form_overflow(self):
        with pytest.raises(CoefficientOverflow):
            euler_closed_form_evolve(1.0, 0j, 20.0, exp_series(64))


class TestEvaluator:
    def test_closed_form_for_real_dilation(self):
        e = SemigroupEvaluator.for_symbol(EulerPoly((ExactScalar.of(2), ONE)))
        assert e.closed_form == ClosedFormDilation(a=1.0, b=2 + 0j)
        assert e.is_group

    def test_closed_form_needs_first_order(self):
        with pytest.raises(InvalidParameter):
            SemigroupEvaluator(EulerPoly((ZERO, ZERO, ONE)), ClosedFormDilation(1.0, 0j))

    def test_closed_form_must_match(self):
        with pytest.raises(InvalidParameter):
            SemigroupEvaluator(DILATION, ClosedFormDilation(2.0, 0j))

    def test_hardy_is_group(self):
        assert SemigroupEvaluator.for_symbol(HARDY).is_group

    def test_quadratic_is_not_group(self):
        assert not SemigroupEvaluator.for_symbol(EulerPoly((ZERO, ZERO, ExactScalar.imag_unit()))).is_group


class TestLaws:
    @hyp_settings(max_examples=50, deadline=None)
    @given(real_series(), st.floats(0, 2), st.floats(0, 2))
    def test_semigroup_law_dilation(self, f, t, s):
        assert check_semigroup_law(SemigroupEvaluator(DILATION), t, s, f) < 1e-11

    @hyp_settings(max_examples=50, deadline=None)
    @given(real_series(), st.floats(0, 2), st.floats(0, 2))
    def test_semigroup_law_hardy(self, f, t, s):
        assert check_semigroup_law(SemigroupEvaluator(HARDY), t, s, f) < 1e-11

    def test_semigroup_law_fixed_pair(self):
        assert check_semigroup_law(SemigroupEvaluator(DILATION), 0.3, 0.7, exp_series(64)) < 1e-12

    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_group_law_hardy(self, t):
        assert check_group_law(SemigroupEvaluator(HARDY), t, exp_series(64)) < 1e-11

    @pytest.mark.parametrize("a", [Fraction(1), Fraction(-1, 2), Fraction(3, 10)])
    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_group_law_real_dilation(self, a, t):
        e = SemigroupEvaluator.for_symbol(EulerPoly((ExactScalar.of(Fraction(1, 4)), ExactScalar.of(a))))
        assert e.is_group
        assert check_group_law(e, t, exp_series(64)) < 1e-11


class TestGenerator:
    def test_first_order_error(self):
        f = TruncatedTaylorSeries.monomial(3, 8)
        approx, error = generator_finite_difference(SemigroupEvaluator(DILATION), f, 1e-4)
        assert error == pytest.approx(1.5e-4, rel=1e-3)
        assert approx.coeffs[3].real == pytest.approx(3.00045, rel=1e-6)

    @pytest.mark.parametrize("h", [1e-2, 1e-3, 1e-4, 1e-5])
    def test_halving_step_halves_error(self, h):
        e = SemigroupEvaluator(DILATION)
        f = TruncatedTaylorSeries.monomial(3, 8)
        _, coarse = generator_finite_difference(e, f, h)
        _, fine = generator_finite_difference(e, f, h / 2)
        assert 1.8 <= coarse / fine <= 2.2

    def test_slope_over_four_decades(self):
        e = SemigroupEvaluator(DILATION)
        f = exp_series(32)
        steps = generator_steps(e, f)
        errors = [generator_finite_difference(e, f, h)[1] for h in steps]
        slope = np.polyfit(np.log10(steps), np.log10(errors), 1)[0]
        assert 0.9 <= slope <= 1.1

    def test_steps_shrink_for_large_symbols(self):
        e = SemigroupEvaluator(EulerPoly((ZERO, ZERO, ExactScalar.imag_unit())))
        f = exp_series(32)
        steps = generator_steps(e, f)
        assert steps[0] * 32 ** 2 == pytest.approx(0.1)
        assert steps[-1] / steps[0] == pytest.approx(1e-3)
        errors = [generator_finite_difference(e, f, h)[1] for h in steps]
        slope = np.polyfit(np.log10(steps), np.log10(errors), 1)[0]
        assert 0.9 <= slope <= 1.1

    def test_small_symbols_keep_the_default_steps(self):
        assert generator_steps(SemigroupEvaluator(HARDY), exp_series(8)) == [1e-2, 1e-3, 1e-4, 1e-5]

    def test_zero_symbol_is_exact(self):
        _, error = generator_finite_difference(SemigroupEvaluator(EulerPoly((ZERO,))), exp_series(8), 1e-3)
        assert error == 0.0

    def test_step_must_be_positive(self):
        with pytest.raises(InvalidParameter):
            generator_finite_difference(SemigroupEvaluator(DILATION), exp_series(8), 0.0)


class TestStrongContinuity:
    def test_exponential_trace_decreases(self):
        probe = strong_continuity_probe(SemigroupEvaluator(DILATION), exp_series(128), 0.5, 1.0)
        assert len(probe.trace) == 11
        assert all(b < a for a, b in zip(probe.trace, probe.trace[1:]))
        for a, b in zip(probe.trace[5:], probe.trace[6:]):
            assert 0.45 <= b / a <= 0.55
        assert probe.sup_bound == pytest.approx(math.exp(math.exp(0.5)), rel=1e-10)
        assert probe.surrogate

    def test_zero_function(self):
        probe = strong_continuity_probe(SemigroupEvaluator(DILATION), TruncatedTaylorSeries.zeros(32), 0.5, 1.0)
        assert max(probe.trace) == 0.0

    def test_interval_beyond_reliable_radius(self):
        with pytest.raises(DomainExceeded):
            strong_continuity_probe(SemigroupEvaluator(DILATION), exp_series(128), 0.5, 20.0)

    def test_short_truncation_skips_domain_check(self):
        probe = strong_continuity_probe(SemigroupEvaluator(DILATION), exp_series(8), 0.5, 1.0)
        assert probe.notes

    def test_grid_too_small(self):
        with pytest.raises(InvalidParameter):
            strong_continuity_probe(SemigroupEvaluator(DILATION), exp_series(32), 0.5, 1.0, grid=8)

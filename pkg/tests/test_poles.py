"""
Tests for period detection, rational reconstruction and pole reports.
"""
import math

import numpy as np
import pytest

from core.config import settings
from core.exceptions import DegenerateInput, IllConditioned, PeriodMismatch
from models.rational import Pole, PoleReport, RationalForm
from models.series import TruncatedTaylorSeries
from services.poles import (
    NO_POLES_NOTE,
    analyze_coefficients,
    classify_real_axis,
    detect_period,
    expand_rational,
    fit_rational,
    pole_locations,
    reconstruct_periodic_rational,
    report_to_json,
)
from services.series import radius_of_convergence_estimate

n = np.arange(64)
# exp(i pi Ptilde(n) / 4) for Ptilde(n) = n^2
XI = np.exp(1j * np.pi * (n ** 2 % 8) / 4)


class TestPeriod:
    def test_smallest_period(self):
        p = detect_period(XI, 16)
        assert p == 4
        assert 8 % p == 0

    def test_constant(self):
        assert detect_period(np.ones(30), 10) == 1

    def test_aperiodic(self):
        assert detect_period(0.5 ** n, 16) is None

    def test_too_short(self):
        with pytest.raises(DegenerateInput):
            detect_period(np.ones(10), 4)


class TestReconstruction:
    def test_geometric_ones(self):
        r = reconstruct_periodic_rational(np.ones(12), 1)
        np.testing.assert_array_equal(r.numerator_coeffs, [1])
        np.testing.assert_array_equal(r.denominator_coeffs, [1, -1])
        assert r.exact and r.period == 1

    def test_expansion_reproduces_coefficients(self):
        r = reconstruct_periodic_rational(XI, 8)
        np.testing.assert_allclose(expand_rational(r, 63), XI, atol=1e-12)

    def test_wrong_period(self):
        with pytest.raises(PeriodMismatch):
            reconstruct_periodic_rational(0.5 ** n, 1)

    def test_denominator_must_not_vanish_at_zero(self):
        with pytest.raises(DegenerateInput):
            RationalForm(np.ones(1), np.array([0.0, 1.0]))


class TestFit:
    def test_exponential(self):
        r = fit_rational(np.exp(0.5 * n), 1)
        assert r.denominator_degree == 1
        report = pole_locations(r)
        assert len(report.poles) == 1
        assert report.poles[0].location == pytest.approx(math.exp(-0.5), rel=1e-8)
        assert report.all_real

    def test_two_real_poles(self):
        r = fit_rational(2.0 ** -n + 3.0 ** -n, 2)
        locations = sorted(p.location.real for p in pole_locations(r).poles)
        assert locations == pytest.approx([2.0, 3.0], abs=1e-6)

    def test_rotation(self):
        rho = math.sqrt(2) - 1
        k = np.arange(256)
        r = fit_rational(np.exp(2j * np.pi * rho * k), 1)
        report = pole_locations(r)
        expected = complex(math.cos(2 * rho * math.pi), -math.sin(2 * rho * math.pi))
        assert abs(report.poles[0].location - expected) < 1e-6
        assert not report.all_real

    def test_factorial_decay_does_not_fit(self):
        c = np.array([1.0 / math.factorial(k) for k in range(32)])
        with pytest.raises(IllConditioned) as info:
            fit_rational(c, 2)
        assert info.value.residual > 1e-6

    def test_degree_bounds(self):
        with pytest.raises(DegenerateInput):
            fit_rational(np.ones(8), 3)


class TestPoleLocations:
    def test_simple_pole(self):
        report = pole_locations(RationalForm(np.ones(1), np.array([1.0, -1.0])))
        assert [p.location for p in report.poles] == pytest.approx([1.0])
        assert report.all_real

    def test_cancelled_factor(self):
        r = RationalForm(np.array([1.0, 0.0, -1.0]), np.array([1.0, 0.0, -1.0]))
        assert pole_locations(r).poles == []

    def test_periodic_numerator_pole_at_i(self):
        report = pole_locations(reconstruct_periodic_rational(XI, 8))
        assert not report.all_real
        assert min(abs(p.location - 1j) for p in report.poles) < 1e-12

    def test_real_axis_tolerance(self):
        report = PoleReport(poles=[Pole(2.0 + 1e-12j, 0.0)], all_real=True, tolerance=1e-8)
        assert classify_real_axis(report)
        assert not classify_real_axis(report, tol=1e-14)

    def test_empty_report_is_real(self):
        assert classify_real_axis(PoleReport(poles=[], all_real=True, tolerance=1e-8))


class TestAnalyze:
    def test_periodic_first(self):
        analysis = analyze_coefficients(XI)
        assert analysis.method == "periodic"
        assert analysis.rational.period == 4

    def test_fit_second(self):
        analysis = analyze_coefficients(2.0 ** -n)
        assert analysis.method == "fit"
        assert [p.location for p in analysis.report.poles] == pytest.approx([2.0], rel=1e-8)

    def test_nothing_found(self):
        c = np.array([1.0 / math.factorial(k) for k in range(32)])
        analysis = analyze_coefficients(c, max_period=10, max_degree=2)
        assert analysis.rational is None
        assert analysis.report.poles == []
        assert "no finite poles detected" in analysis.report.note

    def test_radius_matches_nearest_pole(self):
        c = 2.0 ** -n + 3.0 ** -n
        analysis = analyze_coefficients(c)
        nearest = min(abs(p.location) for p in analysis.report.poles)
        radius = radius_of_convergence_estimate(TruncatedTaylorSeries(c)).radius
        assert radius == pytest.approx(nearest, rel=0.02)

    def test_json(self):
        data = report_to_json(analyze_coefficients(np.exp(0.5 * n)).report)
        assert set(data) == {"poles", "all_real", "tolerance"}
        assert data["poles"][0]["im"] == pytest.approx(0.0, abs=1e-12)


class TestScreening:
    def test_entire_function_has_no_poles(self):
        k = np.arange(257.0)
        analysis = analyze_coefficients(np.exp(-0.01 * k ** 2))
        assert analysis.method == "none"
        assert analysis.report.poles == []
        assert analysis.report.all_real
        assert analysis.report.note == NO_POLES_NOTE

    def test_zero_radius_is_not_fitted(self):
        k = np.arange(25.0)
        analysis = analyze_coefficients(np.exp(k ** 2))
        assert analysis.rational is None
        assert "radius 0" in analysis.report.note

    def test_fit_agrees_with_radius(self):
        c = 1.5 ** -n + (0.5 + 2j) ** -n
        analysis = analyze_coefficients(c)
        assert analysis.method == "fit"
        nearest = min(abs(p.location) for p in analysis.report.poles)
        radius = radius_of_convergence_estimate(TruncatedTaylorSeries(c)).radius
        assert abs(nearest - radius) <= 0.02 * radius

    def test_disagreeing_fit_is_dropped(self, monkeypatch):
        monkeypatch.setattr(settings, "POLE_AGREEMENT", 0.0)
        analysis = analyze_coefficients(2.0 ** -n + 3.0 ** -n)
        assert analysis.rational is None
        assert analysis.report.note == NO_POLES_NOTE


class TestFitConsistency:
    @pytest.mark.parametrize(
        "poles",
        [
            [0.5, 2.0],
            [1.2, -1.5, 4.0],
            [0.8 + 0.6j, 0.8 - 0.6j, 3.0],
            [0.6, -0.9, 1.4, 2.0],
        ],
    )
    def test_recovers_known_poles(self, poles):
        k = np.arange(256)
        c = sum(complex(p) ** -k.astype(float) for p in poles)
        r = fit_rational(c, len(poles))
        assert r.denominator_degree == len(poles)
        found = [p.location for p in pole_locations(r).poles]
        for expected in poles:
            assert min(abs(z - expected) for z in found) < 1e-6

    def test_held_out_rows_count_in_the_residual(self):
        # a level shift late in the data is invisible to the fitted rows
        c = 0.5 ** n.astype(float)
        c[-3:] *= 1.5
        with pytest.raises(IllConditioned):
            fit_rational(c, 1)

"""
Service layer running the operator pipelines for the command line and the API.
"""
import json
import logging
import math
import re
from functools import reduce
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from scipy.special import factorial

from core.config import settings
from core.exceptions import (
    CoefficientOverflow,
    HadamardFlowError,
    InvalidSeries,
    NegativeTimeForSemigroupOnly,
    VariantMismatch,
)
from models.geometry import GammaRegion
from models.semigroup import SemigroupEvaluator
from models.series import TruncatedTaylorSeries
from models.symbols import Explicit, HardyRational, MultiplierSymbol
from models.verdict import BlowUp, GenerationVerdict, IrrationalRotation, RootOfUnityPole, VerdictKind
from schemas.operator import (
    CheckResult,
    EvolveResponse,
    MellinResponse,
    PoleReportResponse,
    RunConfig,
    SeriesPayload,
    VerdictResponse,
    VerifyResponse,
)
from services.classify import classify, classify_sum, verdict_to_json
from services.mellin import (
    build_hardy_witness,
    default_halfplane,
    mellin_constant,
    seminorm_report,
    verify_mellin_bound,
    write_plot_data,
)
from services.parser import iter_terms, parse_operator, to_symbol
from services.poles import analyze_coefficients, report_to_json
from services.semigroup import (
    check_group_law,
    check_semigroup_law,
    evolve,
    generator_finite_difference,
    generator_steps,
    strong_continuity_probe,
)
from services.series import radius_of_convergence_estimate, series_from_json, series_to_json
from services.symbols import exp_scaled_coefficients, format_symbol

logger = logging.getLogger(__name__)

GEOM_PRESET = re.compile(r"^geom\(\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*\)$")


class OperatorService:
    """
    Service class running classify, evolve, poles, verify and mellin for an
    operator given in the DSL.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        """
        Initialize the service with a run configuration.

        Args:
            config: Numerical settings; environment defaults when omitted
        """
        self.config = config or RunConfig()

    def resolve(self, src: str) -> Tuple[MultiplierSymbol, GenerationVerdict]:
        """
        Parse an operator and classify it.

        A sum whose folded symbol is Unknown is retried term by term, since
        sums of generators generate.

        Args:
            src: Operator DSL text

        Returns:
            The folded symbol and its verdict
        """
        expr = parse_operator(src)
        symbol = to_symbol(expr)
        verdict = classify(symbol)
        terms = list(iter_terms(expr))
        if verdict.kind == VerdictKind.UNKNOWN and len(terms) > 1:
            combined = reduce(classify_sum, (classify(term.symbol) for term in terms))
            if combined.generates:
                verdict = combined
        logger.info(f"{format_symbol(symbol)}: {verdict.kind.value} ({verdict.reason.value})")
        return symbol, verdict

    def classify(self, src: str) -> VerdictResponse:
        _, verdict = self.resolve(src)
        return VerdictResponse(**verdict_to_json(verdict))

    def load_input(self, source: str = "exp", series: Optional[SeriesPayload] = None) -> TruncatedTaylorSeries:
        """
        Input series from a preset (exp, geom(rho)), a payload or a JSON file.

        Args:
            source: Preset name or path to a series JSON file
            series: Explicit series payload, takes precedence over source

        Returns:
            The series truncated at the configured order for presets
        """
        if series is not None:
            return series_from_json(series.model_dump())
        n = np.arange(self.config.order + 1)
        if source == "exp":
            return TruncatedTaylorSeries(1.0 / factorial(n))
        match = GEOM_PRESET.match(source.strip())
        if match:
            return TruncatedTaylorSeries(float(match.group(1)) ** n)
        path = Path(source)
        if not path.is_file():
            raise InvalidSeries(f"unknown input {source!r}: expected exp, geom(rho) or a series JSON file")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise InvalidSeries(f"{path} is not valid JSON: {e}")
        return series_from_json(data)

    def evolve(self, src: str, t: float, source: str = "exp",
               series: Optional[SeriesPayload] = None) -> EvolveResponse:
        symbol, verdict = self.resolve(src)
        if t < 0 and not (verdict.generates and verdict.group):
            raise NegativeTimeForSemigroupOnly(
                f"t={t} < 0 needs a C0-group; {format_symbol(symbol)} is {verdict.kind.value}"
            )
        f = self.load_input(source, series)
        result = evolve(SemigroupEvaluator.for_symbol(symbol), t, f)
        return EvolveResponse(operator=format_symbol(symbol), t=t, series=SeriesPayload(**series_to_json(result)))

    def poles(self, src: str, t: float) -> PoleReportResponse:
        """
        Pole report of f_t; explicit sequences are analysed as given and t is ignored.
        """
        symbol, _ = self.resolve(src)
        if isinstance(symbol, Explicit):
            coeffs = symbol.seq
        else:
            coeffs = self._decaying_coefficients(symbol, t, self.config.order)
        analysis = analyze_coefficients(coeffs, tol=self.config.tol)
        return PoleReportResponse(operator=format_symbol(symbol), t=t, method=analysis.method,
                                  **report_to_json(analysis.report))

    def verify(self, src: str) -> VerifyResponse:
        """
        Run the semigroup checks for one operator; passes iff every check does.
        """
        symbol, verdict = self.resolve(src)
        evaluator = SemigroupEvaluator.for_symbol(symbol)
        order = self.config.verify_order
        if isinstance(symbol, Explicit):
            order = min(order, len(symbol) - 1)
        f = TruncatedTaylorSeries(1.0 / factorial(np.arange(order + 1)))

        checks = [self._run_check("semigroup_law", lambda: self._semigroup_check(evaluator, f))]
        if evaluator.is_group:
            checks.append(self._run_check("group_law", lambda: self._group_check(evaluator, f)))
        checks.append(self._run_check("generator", lambda: self._generator_check(evaluator, f)))
        checks.append(self._run_check("strong_continuity", lambda: self._continuity_check(evaluator, f)))
        checks.append(self._run_check("poles", lambda: self._pole_check(symbol, verdict)))
        if isinstance(symbol, HardyRational):
            checks.extend(self._mellin_checks(symbol))

        return VerifyResponse(
            operator=format_symbol(symbol),
            verdict=VerdictResponse(**verdict_to_json(verdict)),
            passed=all(c.passed for c in checks),
            checks=checks,
        )

    def mellin(self, src: str, t: float, j: int = 1, a: float = 1.0,
               plot_path: Optional[Union[str, Path]] = None) -> MellinResponse:
        symbol, _ = self.resolve(src)
        if not isinstance(symbol, HardyRational):
            raise VariantMismatch("Mellin witnesses are built for Hardy symbols only")
        coeffs = [complex(c) for c in symbol.coeffs]
        domain = default_halfplane(self.config.sectors)
        witness = build_hardy_witness(coeffs, t, domain)
        g = GammaRegion(j, domain)
        report = seminorm_report(witness, g, a, self.config.grid_points, self.config.rmax)
        C = mellin_constant(coeffs, t)
        holds, ratio = verify_mellin_bound(witness, C, self.config.grid_points, self.config.rmax)
        if plot_path is not None:
            write_plot_data(report, plot_path)
        return MellinResponse(
            operator=format_symbol(symbol),
            seminorm=report.value,
            argmax=(report.argmax.real, report.argmax.imag),
            bound=_seminorm_bound(coeffs, t, j, a),
            constant=C,
            bound_holds=holds,
            max_ratio=ratio,
            metadata=report.metadata,
        )

    @staticmethod
    def _run_check(name: str, check: Callable[[], CheckResult]) -> CheckResult:
        try:
            return check()
        except HadamardFlowError as e:
            logger.warning(f"check {name} failed with {type(e).__name__}: {e.detail}")
            return CheckResult(name=name, passed=False, detail=e.detail)

    def _semigroup_check(self, e: SemigroupEvaluator, f: TruncatedTaylorSeries) -> CheckResult:
        grid = self.config.t_grid
        worst = max(check_semigroup_law(e, t, s, f) for t, s in zip(grid[::2], grid[1::2]))
        return CheckResult(name="semigroup_law", passed=worst < settings.LAW_TOLERANCE,
                           value=worst, threshold=settings.LAW_TOLERANCE)

    def _group_check(self, e: SemigroupEvaluator, f: TruncatedTaylorSeries) -> CheckResult:
        worst = max(check_group_law(e, t, f) for t in (0.5, 2.0))
        return CheckResult(name="group_law", passed=worst < settings.LAW_TOLERANCE,
                           value=worst, threshold=settings.LAW_TOLERANCE)

    def _generator_check(self, e: SemigroupEvaluator, f: TruncatedTaylorSeries) -> CheckResult:
        steps = generator_steps(e, f)
        errors = [generator_finite_difference(e, f, h)[1] for h in steps]
        if max(errors) == 0:
            return CheckResult(name="generator", passed=True, value=0.0, detail="difference quotient is exact")
        if min(errors) == 0:
            return CheckResult(name="generator", passed=False, detail="error vanishes at some steps only")
        slope = float(np.polyfit(np.log10(steps), np.log10(errors), 1)[0])
        lo, hi = settings.GENERATOR_SLOPE
        return CheckResult(name="generator", passed=lo <= slope <= hi, value=slope,
                           detail=f"log-log slope over h in [{steps[-1]:.3g}, {steps[0]:.3g}]")

    def _continuity_check(self, e: SemigroupEvaluator, f: TruncatedTaylorSeries) -> CheckResult:
        probe = strong_continuity_probe(e, f, self.config.probe_t0, self.config.R)
        trace = probe.trace
        decreasing = all(b <= a * (1 + 1e-12) for a, b in zip(trace, trace[1:]))
        return CheckResult(
            name="strong_continuity",
            passed=decreasing and trace[-1] <= trace[0],
            value=probe.sup_bound,
            detail=f"trace {trace[0]:.3g} -> {trace[-1]:.3g}; sup bound is a sampled surrogate",
        )

    def _pole_check(self, symbol: MultiplierSymbol, verdict: GenerationVerdict) -> CheckResult:
        cert = verdict.certificate
        if isinstance(symbol, Explicit):
            coeffs = symbol.seq
            t = 0.0
        elif isinstance(cert, BlowUp):
            N = self._representable_order(symbol, cert.t)
            est = radius_of_convergence_estimate(exp_scaled_coefficients(symbol, cert.t, N))
            detail = "radius 0: f_t has no analytic germ" if est.divergent else f"radius {est.radius:.4g}"
            return CheckResult(name="poles", passed=not est.divergent, value=est.radius, detail=detail)
        else:
            N = self.config.verify_order
            if isinstance(cert, RootOfUnityPole):
                t, N = cert.t0, max(N, 8 * cert.q)
            elif isinstance(cert, IrrationalRotation):
                t = cert.t0
            else:
                t = self.config.probe_t0
            coeffs = self._decaying_coefficients(symbol, t, N)
        report = analyze_coefficients(coeffs, tol=self.config.tol).report
        off_axis = [p.location for p in report.poles if not _on_real_axis(p.location, report.tolerance)]
        if off_axis:
            detail = f"f_t at t={t:.6g} has a pole off the real axis at {off_axis[0]:.6g}"
        else:
            detail = report.note or f"{len(report.poles)} real poles at t={t:.6g}"
        return CheckResult(name="poles", passed=report.all_real, value=float(len(report.poles)), detail=detail)

    def _decaying_coefficients(self, symbol: MultiplierSymbol, t: float, N: int) -> np.ndarray:
        """
        Coefficients of f_t up to order N. A tail that underflows the exponent
        range is cut at the last representable index; growth still raises.
        """
        try:
            return exp_scaled_coefficients(symbol, t, N).coeffs
        except CoefficientOverflow as e:
            if e.exponent > 0 or e.n <= settings.MIN_RADIUS_ORDER:
                raise
            logger.info(f"exponent {e.exponent:.4g} at n={e.n} underflows; truncating f_t at order {e.n - 1}")
            return exp_scaled_coefficients(symbol, t, e.n - 1).coeffs

    def _representable_order(self, symbol: MultiplierSymbol, t: float) -> int:
        try:
            exp_scaled_coefficients(symbol, t, self.config.verify_order)
            return self.config.verify_order
        except CoefficientOverflow as e:
            return max(e.n - 1, settings.MIN_RADIUS_ORDER)

    def _mellin_checks(self, symbol: HardyRational) -> List[CheckResult]:
        coeffs = [complex(c) for c in symbol.coeffs]
        t, j, a = 1.0, 1, 1.0
        domain = default_halfplane(self.config.sectors)
        witness = build_hardy_witness(coeffs, t, domain)
        value = seminorm_report(witness, GammaRegion(j, domain), a,
                                self.config.grid_points, self.config.rmax).value
        bound = _seminorm_bound(coeffs, t, j, a)
        holds, ratio = verify_mellin_bound(witness, mellin_constant(coeffs, t),
                                           self.config.grid_points, self.config.rmax)
        return [
            CheckResult(name="mellin_seminorm", passed=value <= bound, value=value, threshold=bound),
            CheckResult(name="mellin_bound", passed=holds, value=ratio, threshold=1.0),
        ]


def _seminorm_bound(coeffs: List[complex], t: float, j: int, a: float) -> float:
    # exp(sum 2^k |t a_k|) exp((a + 1/j)/2)
    return math.exp(sum(2 ** k * abs(t * c) for k, c in enumerate(coeffs)) + (a + 1.0 / j) / 2)


def _on_real_axis(z: complex, tol: float) -> bool:
    return abs(z.imag) <= tol * (1 + abs(z))

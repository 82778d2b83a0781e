"""
Pydantic schemas for API requests, responses and run configuration.
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from core.config import settings


# Run configuration
class RunConfig(BaseModel):
    """
    Numerical knobs for one command; defaults come from the environment.
    """
    order: int = Field(default_factory=lambda: settings.DEFAULT_ORDER, gt=0)
    tol: float = Field(default_factory=lambda: settings.REAL_AXIS_TOLERANCE, gt=0)
    grid_points: int = Field(default_factory=lambda: settings.GRID_POINTS, gt=0)
    rmax: float = Field(default_factory=lambda: settings.GRID_RMAX, gt=0)
    sectors: int = Field(default_factory=lambda: settings.SECTOR_COUNT, gt=0)
    R: float = Field(default=1.0, gt=0)  # compact radius for the continuity probe
    probe_t0: float = Field(default=0.5, gt=0)
    verify_order: int = Field(default_factory=lambda: settings.VERIFY_ORDER, gt=0)
    t_grid: List[float] = Field(default_factory=lambda: [0.3, 0.7, 0.5, 0.5, 1.0, 0.25])

    @model_validator(mode="after")
    def _pairs(self):
        if len(self.t_grid) % 2:
            raise ValueError("t_grid holds (t, s) pairs and needs an even length")
        return self


# Series schemas
class SeriesPayload(BaseModel):
    order: int = Field(ge=0)
    coeffs: List[Tuple[float, float]]

    @model_validator(mode="after")
    def _length(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"order {self.order} needs {self.order + 1} coefficients")
        return self


# Request schemas
class OperatorRequest(BaseModel):
    operator: str = Field(min_length=1, examples=["euler: i*theta^2"])


class EvolveRequest(OperatorRequest):
    t: float
    input: str = Field(default="exp", description="Preset: exp or geom(rho)")
    series: Optional[SeriesPayload] = None


class PolesRequest(OperatorRequest):
    t: float = 0.5


class MellinRequest(OperatorRequest):
    t: float = 1.0
    j: int = Field(default=1, ge=1)
    a: float = Field(default=1.0, gt=0)


# Response schemas
class VerdictResponse(BaseModel):
    verdict: str
    reason: str
    group: bool = False
    certificate: Optional[Dict[str, Any]] = None
    notes: List[str] = []


class EvolveResponse(BaseModel):
    operator: str
    t: float
    series: SeriesPayload


class PoleEntry(BaseModel):
    re: float
    im: float
    residual: float


class PoleReportResponse(BaseModel):
    operator: str
    t: float
    method: str
    poles: List[PoleEntry]
    all_real: bool
    tolerance: float
    note: Optional[str] = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    value: Optional[float] = None
    threshold: Optional[float] = None
    detail: Optional[str] = None


class VerifyResponse(BaseModel):
    operator: str
    verdict: VerdictResponse
    passed: bool
    checks: List[CheckResult]


class MellinResponse(BaseModel):
    operator: str
    seminorm: float
    argmax: Tuple[float, float]
    bound: float
    constant: float
    bound_holds: bool
    max_ratio: float
    metadata: Dict[str, Any] = {}

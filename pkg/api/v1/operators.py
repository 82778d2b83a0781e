"""
Operator API endpoints for the hadamard-flow service.
"""
from typing import Callable, TypeVar

from fastapi import APIRouter, HTTPException

from core.exceptions import HadamardFlowError
from schemas.operator import (
    EvolveRequest,
    EvolveResponse,
    MellinRequest,
    MellinResponse,
    OperatorRequest,
    PoleReportResponse,
    PolesRequest,
    VerdictResponse,
    VerifyResponse,
)
from services.operator_service import OperatorService

router = APIRouter()

T = TypeVar("T")


def _run(call: Callable[[], T]) -> T:
    try:
        return call()
    except HadamardFlowError as e:
        raise HTTPException(status_code=e.status_code, detail=e.detail)


@router.post("/classify", response_model=VerdictResponse)
def classify_operator(request: OperatorRequest):
    """
    Generation verdict with its certificate.
    """
    service = OperatorService()
    return _run(lambda: service.classify(request.operator))


@router.post("/evolve", response_model=EvolveResponse)
def evolve_series(request: EvolveRequest):
    """
    Apply T_t to a preset or an explicit series.
    """
    service = OperatorService()
    return _run(lambda: service.evolve(request.operator, request.t, request.input, request.series))


@router.post("/poles", response_model=PoleReportResponse)
def locate_poles(request: PolesRequest):
    service = OperatorService()
    return _run(lambda: service.poles(request.operator, request.t))


@router.post("/verify", response_model=VerifyResponse)
def verify_operator(request: OperatorRequest):
    service = OperatorService()
    return _run(lambda: service.verify(request.operator))


@router.post("/mellin", response_model=MellinResponse)
def mellin_report(request: MellinRequest):
    """
    Sampled seminorm and growth bound of the Mellin witness of a Hardy symbol.
    """
    service = OperatorService()
    return _run(lambda: service.mellin(request.operator, request.t, request.j, request.a))

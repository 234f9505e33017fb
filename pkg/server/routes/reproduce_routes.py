"""
Reproduction / Validation API Routes
표·그림 재현과 불변식 검증 스위트
"""

from typing import Literal, Optional

from fastapi import APIRouter
from pydantic import BaseModel

from config.settings import DEFAULT_SEED
from routes.schemas import to_http_exception
from services.montecarlo_service import build_mc_config
from services.reproduce_service import TARGETS, get_reproduction_service
from services.validation_service import get_validation_service

router = APIRouter(prefix="/api", tags=["Reproduction"])


class ReproduceRequest(BaseModel):
    samples: int = 1_000_000
    seed: int = DEFAULT_SEED


class ValidateRequest(BaseModel):
    level: Literal["fast", "full"] = "fast"


@router.get("/reproduce/targets")
async def list_targets():
    """재현 가능한 대상 목록"""
    return {"targets": list(TARGETS)}


@router.post("/reproduce/{target}")
def reproduce_target(target: str, request: Optional[ReproduceRequest] = None):
    """
    표/그림 데이터 재현

    Returns:
    - passed: 허용오차 검사 통과 여부
    - text: 발표된 배치의 표
    - checks, notes, data
    """
    request = request or ReproduceRequest()
    try:
        mc = build_mc_config(samples=request.samples, seed=request.seed)
        result = get_reproduction_service().run(target, mc)
        return {"passed": result.passed, **result.model_dump()}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/validate")
def validate(request: Optional[ValidateRequest] = None):
    """불변식 검증 스위트 실행 (실패는 리포트 내용으로 반환)"""
    request = request or ValidateRequest()
    try:
        return get_validation_service().run(request.level).model_dump()
    except Exception as e:
        raise to_http_exception(e)

"""
Shared request models and error translation for the API routers
"""

from typing import Optional

from fastapi import HTTPException
from pydantic import BaseModel, Field

from config.settings import (
    DEFAULT_ALPHA1,
    DEFAULT_MC_SAMPLES,
    DEFAULT_OMEGA,
    DEFAULT_RATE,
    DEFAULT_SEED,
    DEFAULT_SNR_DB,
    DEFAULT_ZETA,
)
from services.errors import (
    ConfigError,
    DomainError,
    QuadratureError,
    ScenarioError,
    SupportMismatchError,
    UndefinedError,
    UnknownTargetError,
)
from services.montecarlo_service import McConfig, build_mc_config
from services.scenario import LegacyModel, Scenario, build_scenario


# Request 모델
class ScenarioRequest(BaseModel):
    alpha1: float = DEFAULT_ALPHA1
    snr_db: float = DEFAULT_SNR_DB
    omega: float = DEFAULT_OMEGA
    rate: float = DEFAULT_RATE
    zeta: float = DEFAULT_ZETA

    def scenario(self) -> Scenario:
        return build_scenario(self.alpha1, self.snr_db, self.omega, self.rate)

    def legacy(self) -> LegacyModel:
        if self.zeta < 0:
            raise ScenarioError("zeta", f"must be >= 0, got {self.zeta}")
        return LegacyModel(zeta=self.zeta)


class MonteCarloRequest(ScenarioRequest):
    samples: int = Field(default=min(DEFAULT_MC_SAMPLES, 1_000_000), ge=1000)
    seed: int = DEFAULT_SEED
    chunk: Optional[int] = None

    def mc_config(self) -> McConfig:
        return build_mc_config(samples=self.samples, seed=self.seed, chunk=self.chunk)


def to_http_exception(e: Exception) -> HTTPException:
    """
    도메인 예외 → HTTP 상태 코드

    400: scenario/config/domain errors (detail names the field)
    404: unknown reproduction target
    500: quadrature failure and everything else
    """
    if isinstance(e, HTTPException):
        return e
    if isinstance(e, UnknownTargetError):
        return HTTPException(status_code=404, detail=str(e))
    if isinstance(e, ScenarioError):
        return HTTPException(status_code=400, detail={"field": e.field, "message": str(e)})
    if isinstance(e, ConfigError):
        return HTTPException(status_code=400, detail={"field": e.key, "message": str(e)})
    if isinstance(e, (DomainError, UndefinedError, SupportMismatchError)):
        return HTTPException(status_code=400, detail=str(e))
    if isinstance(e, QuadratureError):
        return HTTPException(status_code=500, detail=f"수치 적분 실패: {e}")
    return HTTPException(status_code=500, detail=f"계산 실패: {str(e)}")

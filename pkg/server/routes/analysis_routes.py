"""
Analysis API Routes
해석적 post-SIC 통계: 채널 통계, outage, ergodic capacity, QPSK, PDF 곡선, 스윕
"""

from typing import Literal, Optional

from fastapi import APIRouter
from fastapi.responses import Response
from pydantic import BaseModel

from routes.schemas import ScenarioRequest, to_http_exception
from services.capacity_service import (
    capacity_breakdowns,
    ec_closed_form_approx,
    ec_total_exact,
    legacy_ec,
    normalized_error,
)
from services.outage_service import (
    legacy_outage,
    legacy_zeta_upper_bound,
    outage_breakdowns,
    outage_total,
)
from services.postsic_bpsk import all_channel_stats, fading_curve, noise_curve
from services.postsic_qpsk import qpsk_summary, table_rails
from services.scenario import bpsk_constellation
from services.sweep_service import ec_sweep, op_sweep, records_to_csv

router = APIRouter(prefix="/api/analysis", tags=["Analysis"])


class CurveRequest(ScenarioRequest):
    point: Literal["X00", "X01", "X10", "X11"] = "X11"
    variable: Literal["fading", "noise"] = "fading"
    branch: Literal["unconditional", "success", "failure"] = "success"


class SweepRequest(ScenarioRequest):
    axis: Literal["snr", "alpha1", "zeta"] = "snr"
    grid: Optional[str] = None
    format: Literal["json", "csv"] = "json"


def _sweep_response(records, axis: str, fmt: str):
    x_name = {"snr": "snr_db", "alpha1": "alpha1", "zeta": "zeta"}[axis]
    if fmt == "csv":
        return Response(content=records_to_csv(records, x_name), media_type="text/csv")
    return {"x": x_name, "records": [{x_name: r.x, **r.columns} for r in records]}


@router.post("/scenario")
async def describe_scenario(request: ScenarioRequest):
    """파생 파라미터 (α₂, σ_n², γ_th, ζ 상한) 확인"""
    try:
        s = request.scenario()
        return {
            **s.to_config(),
            "alpha2": s.alpha2,
            "gamma_bar": s.gamma_bar,
            "sigma_n_sq": s.sigma_n_sq,
            "gamma_th": s.gamma_th,
            "zeta_upper_bound": legacy_zeta_upper_bound(s),
        }
    except Exception as e:
        raise to_http_exception(e)


@router.post("/constellation")
async def get_constellation(request: ScenarioRequest):
    """중첩 BPSK 성상점 X00..X11"""
    try:
        return {"points": [p.model_dump() | {"label": p.label}
                           for p in bpsk_constellation(request.scenario())]}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/branch-stats")
def get_branch_stats(request: ScenarioRequest):
    """성상점별 SIC 성공/실패 확률과 조건부 잡음 2차 모멘트"""
    try:
        return {"stats": [st.model_dump() for st in all_channel_stats(request.scenario())]}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/outage")
def get_outage(request: ScenarioRequest):
    """
    정확한 outage 확률과 legacy 기준값

    Returns:
    - po_exact: 정확한 outage 확률
    - po_legacy: legacy 식 (요청의 ζ 사용)
    - breakdown: 성상점별 분기 항
    """
    try:
        s = request.scenario()
        return {
            "po_exact": outage_total(s),
            "po_legacy": legacy_outage(s, request.legacy()),
            "breakdown": [b.model_dump() for b in outage_breakdowns(s)],
        }
    except Exception as e:
        raise to_http_exception(e)


@router.post("/capacity")
def get_capacity(request: ScenarioRequest):
    """정확한 EC, closed-form 근사, legacy EC 및 정규화 오차(%)"""
    try:
        s = request.scenario()
        exact = ec_total_exact(s)
        approx = ec_closed_form_approx(s)
        legacy = legacy_ec(s, request.legacy())
        return {
            "ec_exact": exact,
            "ec_approx": approx,
            "ec_legacy": legacy,
            "error_approx_pct": normalized_error(exact, approx),
            "error_legacy_pct": normalized_error(exact, legacy),
            "breakdown": [b.model_dump() for b in capacity_breakdowns(s)],
        }
    except Exception as e:
        raise to_http_exception(e)


@router.post("/qpsk")
def get_qpsk_stats(request: ScenarioRequest):
    """QPSK 성공 분기: 레일 조합별 p_S, E|W|², var[W]"""
    try:
        s = request.scenario()
        return {"rails": [{"label": q.label, **qpsk_summary(s, q)} for q in table_rails(s)]}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/pdf")
def get_pdf_curve(request: CurveRequest):
    """조건부/무조건부 PDF 곡선 데이터"""
    try:
        s = request.scenario()
        point = {p.label: p for p in bpsk_constellation(s)}[request.point]
        build = fading_curve if request.variable == "fading" else noise_curve
        curve = build(s, point, request.branch)
        return {
            "branch": curve.branch,
            "variable": curve.variable,
            "params": curve.params,
            "grid": curve.grid.tolist(),
            "density": curve.density.tolist(),
            "integral": curve.integral(),
        }
    except Exception as e:
        raise to_http_exception(e)


@router.post("/sweep/outage")
def sweep_outage(request: SweepRequest):
    """Outage 스윕 (axis: snr | alpha1 | zeta)"""
    try:
        records = op_sweep(request.scenario(), zeta=request.zeta, axis=request.axis, grid=request.grid)
        return _sweep_response(records, request.axis, request.format)
    except Exception as e:
        raise to_http_exception(e)


@router.post("/sweep/capacity")
def sweep_capacity(request: SweepRequest):
    """Capacity 스윕 (axis: snr | alpha1 | zeta)"""
    try:
        records = ec_sweep(request.scenario(), zeta=request.zeta, axis=request.axis, grid=request.grid)
        return _sweep_response(records, request.axis, request.format)
    except Exception as e:
        raise to_http_exception(e)

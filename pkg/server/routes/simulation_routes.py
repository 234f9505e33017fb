"""
Simulation API Routes
Monte Carlo 링크 시뮬레이션 엔드포인트 (해석값과 함께 반환)
"""

from typing import Literal

from fastapi import APIRouter

from routes.schemas import MonteCarloRequest, to_http_exception
from services.capacity_service import ec_total_exact
from services.montecarlo_service import (
    histogram_distance,
    simulate_bpsk_branch_stats,
    simulate_bpsk_ec,
    simulate_bpsk_outage,
    simulate_qpsk_success_stats,
)
from services.outage_service import outage_total
from services.postsic_bpsk import fading_curve, noise_curve, second_moment_w, second_moment_z, sic_success_prob
from services.postsic_qpsk import qpsk_second_moment_w, table_rails
from services.scenario import bpsk_constellation

router = APIRouter(prefix="/api/simulation", tags=["Simulation"])


class BranchRequest(MonteCarloRequest):
    point: Literal["X00", "X01", "X10", "X11"] = "X11"


@router.post("/outage")
def simulate_outage(request: MonteCarloRequest):
    """Monte Carlo outage 확률 vs 정확한 해석값"""
    try:
        s = request.scenario()
        est = simulate_bpsk_outage(s, request.mc_config())
        exact = outage_total(s)
        return {"po_mc": est.mean, "mc_stderr": est.stderr, "samples": est.n,
                "po_exact": exact, "within_3_stderr": est.within(exact)}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/capacity")
def simulate_capacity(request: MonteCarloRequest):
    """Monte Carlo ergodic capacity vs 정확한 해석값"""
    try:
        s = request.scenario()
        est = simulate_bpsk_ec(s, request.mc_config())
        exact = ec_total_exact(s)
        return {"ec_mc": est.mean, "mc_stderr": est.stderr, "samples": est.n,
                "ec_exact": exact, "within_3_stderr": est.within(exact)}
    except Exception as e:
        raise to_http_exception(e)


@router.post("/branch-stats")
def simulate_branch_stats(request: BranchRequest):
    """
    성상점 하나의 조건부 통계와 히스토그램-곡선 거리

    Returns:
    - p_success, m2_w, m2_z: 추정값과 해석값
    - histograms: 분기/변수별 (sup, L1) 거리
    """
    try:
        s = request.scenario()
        point = {p.label: p for p in bpsk_constellation(s)}[request.point]
        est = simulate_bpsk_branch_stats(s, point, request.mc_config())
        distances = {}
        for key, hist in est.histograms.items():
            build = fading_curve if hist.variable == "fading" else noise_curve
            sup, l1 = histogram_distance(hist, build(s, point, hist.branch))
            distances[key] = {"sup": sup, "l1": l1, "count": hist.total}
        return {
            "point": point.label,
            "p_success": {**est.p_success.model_dump(), "exact": sic_success_prob(s, point)},
            "m2_w": {**est.m2_w.model_dump(), "exact": second_moment_w(s, point)},
            "m2_z": {**est.m2_z.model_dump(), "exact": second_moment_z(s, point)},
            "histograms": distances,
        }
    except Exception as e:
        raise to_http_exception(e)


@router.post("/qpsk")
def simulate_qpsk(request: MonteCarloRequest):
    """QPSK 성공 분기 E|W|², var[W] (레일 조합별)"""
    try:
        s = request.scenario()
        cfg = request.mc_config()
        rails = []
        for k, q in enumerate(table_rails(s)):
            est = simulate_qpsk_success_stats(s, q, cfg.model_copy(update={"seed": cfg.seed + k}))
            rails.append({
                "label": q.label,
                "p_success": est.p_success.model_dump(),
                "m2_w": est.m2_w.model_dump(),
                "variance": est.variance.model_dump(),
                "m2_theory": qpsk_second_moment_w(s, q),
            })
        return {"rails": rails}
    except Exception as e:
        raise to_http_exception(e)

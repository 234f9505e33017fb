"""
Outage Service
근거리 사용자의 정확한 outage 확률(성공/실패 분기)과 기존(legacy) 모델 비교

ε thresholds are named eps_success and eps_failure; both are documented
intermediates of OutageBreakdown.
"""

import logging
import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from services.numerics import erf, integrate_adaptive, q_function, erfc, std_normal_cdf
from services.postsic_bpsk import (
    decision_mu,
    pdf_beta_failure,
    pdf_beta_success,
    second_moment_w,
    second_moment_z,
    sic_failure_prob,
    sic_success_prob,
)
from services.scenario import ConstellationPoint, LegacyModel, Scenario, representative_points

logger = logging.getLogger(__name__)


class OutageBreakdown(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: ConstellationPoint
    po_success: float
    po_failure: float
    p_s: float
    p_f: float
    contribution: float
    psi: float
    eps_success: float
    eps_failure: Optional[float] = None  # None: 실패 분기는 항상 outage


def _clip(p: float) -> float:
    return min(1.0, max(0.0, p))


# ============================================
# Thresholds
# ============================================

def eps_success(s: Scenario, x: ConstellationPoint) -> float:
    """ε = √(γ_th/ψ), ψ = α₂/E[W²]"""
    return math.sqrt(s.gamma_th * second_moment_w(s, x) / s.alpha2)


def failure_always_in_outage(s: Scenario) -> bool:
    """α₂ ≤ 4α₁γ_th: the failure-branch SINR ceiling α₂/(4α₁) cannot reach γ_th"""
    return s.alpha2 <= 4.0 * s.alpha1 * s.gamma_th


def eps_failure(s: Scenario, x: ConstellationPoint) -> Optional[float]:
    """ε_F = √(γ_th E[Z²]/(α₂ − 4α₁γ_th)), None when the branch is always in outage"""
    if failure_always_in_outage(s):
        return None
    return math.sqrt(s.gamma_th * second_moment_z(s, x) / (s.alpha2 - 4.0 * s.alpha1 * s.gamma_th))


def _erf_scale(s: Scenario, x: ConstellationPoint) -> float:
    return math.sqrt((x.value ** 2 * s.gamma_bar + 2.0) / (2.0 * s.omega))


# ============================================
# Closed forms
# ============================================

def outage_given_success(s: Scenario, x: ConstellationPoint) -> float:
    """
    P_{O_S} = ∫₀^ε f_{β_S}(β)dβ in closed form

    (1/p_S)[1/2 − e^{−ε²/Ω}Φ(|X|ε/σ_n) + (μ/2)erf(ε√((X²γ̄+2)/(2Ω)))]
    """
    eps = eps_success(s, x)
    a = x.magnitude / s.sigma_n
    mu = decision_mu(s, x)
    value = 0.5 - math.exp(-eps * eps / s.omega) * float(std_normal_cdf(a * eps)) \
        + 0.5 * mu * float(erf(eps * _erf_scale(s, x)))
    return _clip(value / sic_success_prob(s, x))


def outage_given_failure(s: Scenario, x: ConstellationPoint) -> float:
    """
    P_{O_F}: 1 when α₂ ≤ 4α₁γ_th, otherwise ∫₀^{ε_F} f_{β_F}(β)dβ in closed form

    (1/p_F)[p_F + (μ/2)erfc(ε_F√((X²γ̄+2)/(2Ω))) − Q(|X|ε_F/σ_n)e^{−ε_F²/Ω}],
    the 1/2 − (μ/2)erf(·) pair regrouped so the bracket does not cancel at high SNR.
    """
    eps = eps_failure(s, x)
    if eps is None:
        return 1.0
    p_f = sic_failure_prob(s, x)
    a = x.magnitude / s.sigma_n
    mu = decision_mu(s, x)
    value = p_f + 0.5 * mu * float(erfc(eps * _erf_scale(s, x))) \
        - float(q_function(a * eps)) * math.exp(-eps * eps / s.omega)
    return _clip(value / p_f)


def outage_breakdown(s: Scenario, x: ConstellationPoint) -> OutageBreakdown:
    po_s = outage_given_success(s, x)
    po_f = outage_given_failure(s, x)
    p_s = sic_success_prob(s, x)
    p_f = sic_failure_prob(s, x)
    return OutageBreakdown(
        point=x,
        po_success=po_s,
        po_failure=po_f,
        p_s=p_s,
        p_f=p_f,
        contribution=po_s * p_s + po_f * p_f,
        psi=s.alpha2 / second_moment_w(s, x),
        eps_success=eps_success(s, x),
        eps_failure=eps_failure(s, x),
    )


def outage_total(s: Scenario) -> float:
    """
    (1/4)Σ_ij[P_{O_S}p_S + P_{O_F}p_F]

    X00/X01 mirror X11/X10, so the four-term average is the two-point average.
    """
    x11, x10 = representative_points(s)
    return 0.5 * (outage_breakdown(s, x11).contribution + outage_breakdown(s, x10).contribution)


def outage_breakdowns(s: Scenario) -> List[OutageBreakdown]:
    return [outage_breakdown(s, x) for x in representative_points(s)]


# ============================================
# Quadrature oracles
# ============================================

def outage_given_success_quadrature(s: Scenario, x: ConstellationPoint) -> float:
    """Direct quadrature of the defining CDF integral"""
    eps = eps_success(s, x)
    if eps == 0.0:
        return 0.0
    return integrate_adaptive(lambda b: pdf_beta_success(s, x, b), 0.0, eps).value


def outage_given_failure_quadrature(s: Scenario, x: ConstellationPoint) -> float:
    eps = eps_failure(s, x)
    if eps is None:
        return 1.0
    if eps == 0.0:
        return 0.0
    return integrate_adaptive(lambda b: pdf_beta_failure(s, x, b), 0.0, eps).value


# ============================================
# Legacy baseline
# ============================================

def legacy_outage(s: Scenario, m: LegacyModel) -> float:
    """1 − exp(−(γ_th/γ̄)/(α₂ − ζα₁γ_th)) when α₂ > ζα₁γ_th, else 1"""
    margin = s.alpha2 - m.zeta * s.alpha1 * s.gamma_th
    if margin <= 0.0:
        return 1.0
    return -math.expm1(-(s.gamma_th / s.gamma_bar) / margin)


def legacy_zeta_upper_bound(s: Scenario) -> float:
    """α₂/(α₁γ_th): largest ζ for which the legacy outage is below 1"""
    return s.alpha2 / (s.alpha1 * s.gamma_th)

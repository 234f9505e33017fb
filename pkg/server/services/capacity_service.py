"""
Capacity Service
정확한 ergodic capacity, Chiani 근사 closed form, legacy EC, 정규화 오차
"""

import logging
import math
from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from services.errors import UndefinedError
from services.numerics import (
    LN2,
    integrate_adaptive,
    integrate_semi_infinite,
    q_function,
    scaled_exp_integral_e1,
)
from services.postsic_bpsk import (
    pdf_beta_failure,
    pdf_beta_success,
    second_moment_w,
    second_moment_z,
    sic_failure_prob,
    sic_success_prob,
)
from services.scenario import (
    ConstellationPoint,
    LegacyModel,
    Scenario,
    legacy_sinr,
    rayleigh_pdf,
    representative_points,
)

logger = logging.getLogger(__name__)

# 유한 구간 적분 상한 (× √Ω), e^{-64} 이하의 꼬리는 무시
_FADING_CUTOFF = 8.0


class CapacityBreakdown(BaseModel):
    """
    Per-symbol capacity terms

    c_approx approximates the success-weighted part p_S·C̄_S; the intermediates
    A, B₁, B₂, I₁, I₂ are kept for inspection.
    """
    model_config = ConfigDict(frozen=True)

    point: ConstellationPoint
    c_success: float
    c_failure: float
    c_total: float
    c_approx: float
    p_s: float
    p_f: float
    a: float
    b1: float
    b2: float
    i1: float
    i2: float


def _fading_knots(s: Scenario, x: ConstellationPoint) -> List[float]:
    # Q(|X|β/σ_n)가 변하는 구간을 break point로 지정
    scale = s.sigma_n / x.magnitude
    return [scale, 4.0 * scale]


def _snr_gain(s: Scenario, x: ConstellationPoint) -> float:
    """A = α₂/E[W²]"""
    return s.alpha2 / second_moment_w(s, x)


# ============================================
# Exact capacity
# ============================================

def success_first_term(s: Scenario, x: ConstellationPoint) -> float:
    """(1/ln2)·e^{c}E₁(c), c = E[W²]/(α₂Ω): the unconditional-fading part before 1/p_S"""
    return scaled_exp_integral_e1(second_moment_w(s, x) / (s.alpha2 * s.omega)) / LN2


def success_q_integral(s: Scenario, x: ConstellationPoint) -> float:
    """∫₀^∞ β log₂(1+Aβ²) Q(|X|β/σ_n) e^{−β²/Ω} dβ"""
    gain = _snr_gain(s, x)
    a = x.magnitude / s.sigma_n

    def integrand(b):
        b = np.asarray(b, dtype=float)
        return b * np.log2(1.0 + gain * b * b) * q_function(a * b) * np.exp(-b * b / s.omega)

    return integrate_semi_infinite(integrand).value


def ec_given_success_exact(s: Scenario, x: ConstellationPoint) -> float:
    """
    C̄_S = (1/(p_S ln2))e^{c}E₁(c) − (2/(Ωp_S))·∫β log₂(1+Aβ²)Q(|X|β/σ_n)e^{−β²/Ω}dβ

    Args:
        s: scenario
        x: transmitted superposed symbol

    Returns:
        success-branch ergodic capacity (bits/s/Hz)
    """
    p_s = sic_success_prob(s, x)
    value = success_first_term(s, x) / p_s - 2.0 * success_q_integral(s, x) / (s.omega * p_s)
    return max(0.0, value)


def ec_given_failure_exact(s: Scenario, x: ConstellationPoint) -> float:
    """∫₀^∞ log₂(1 + α₂β²/(4α₁β² + E[Z²])) f_{β_F}(β) dβ, adaptive on the fading support"""
    m2_z = second_moment_z(s, x)

    def integrand(b: float) -> float:
        sinr = s.alpha2 * b * b / (4.0 * s.alpha1 * b * b + m2_z)
        return math.log2(1.0 + sinr) * pdf_beta_failure(s, x, b)

    upper = _FADING_CUTOFF * math.sqrt(s.omega)
    return integrate_adaptive(integrand, 0.0, upper, points=_fading_knots(s, x)).value


def failure_capacity_ceiling(s: Scenario) -> float:
    """log₂(1 + α₂/(4α₁)): pointwise bound of the failure-branch SINR"""
    return math.log2(1.0 + s.alpha2 / (4.0 * s.alpha1))


def capacity_kernel(gain: float, decay: float) -> float:
    """
    I(A, B) = ∫₀^∞ β log₂(1+Aβ²)e^{−Bβ²}dβ = e^{B/A}E₁(B/A)/(2 ln2 B)
    """
    return scaled_exp_integral_e1(decay / gain) / (2.0 * LN2 * decay)


def capacity_breakdown(s: Scenario, x: ConstellationPoint) -> CapacityBreakdown:
    p_s = sic_success_prob(s, x)
    p_f = sic_failure_prob(s, x)
    c_s = ec_given_success_exact(s, x)
    c_f = ec_given_failure_exact(s, x)

    gain = _snr_gain(s, x)
    ratio = x.value ** 2 / s.sigma_n_sq
    b1 = ratio / 2.0 + 1.0 / s.omega
    b2 = 2.0 * ratio / 3.0 + 1.0 / s.omega
    i1 = s.omega * success_first_term(s, x) / 2.0
    i2 = capacity_kernel(gain, b1) / 12.0 + capacity_kernel(gain, b2) / 4.0

    return CapacityBreakdown(
        point=x, c_success=c_s, c_failure=c_f, c_total=c_s * p_s + c_f * p_f,
        c_approx=2.0 * (i1 - i2) / s.omega, p_s=p_s, p_f=p_f,
        a=gain, b1=b1, b2=b2, i1=i1, i2=i2,
    )


def capacity_breakdowns(s: Scenario) -> List[CapacityBreakdown]:
    return [capacity_breakdown(s, x) for x in representative_points(s)]


def ec_total_exact(s: Scenario) -> float:
    """(1/4)Σ_ij[C̄_S p_S + C̄_F p_F] collapsed to the two distinct |X_ij|"""
    return 0.5 * sum(b.c_total for b in capacity_breakdowns(s))


def ec_closed_form_approx(s: Scenario) -> float:
    """
    C̄_A = (1/4)Σ_ij (2/Ω)(I₁ − I₂)

    The failure branch is dropped and Q is replaced by its Chiani bound.
    I₂ enters with a minus: the success branch weights the fading density by 1 − Q.
    """
    total = 0.0
    for x in representative_points(s):
        gain = _snr_gain(s, x)
        ratio = x.value ** 2 / s.sigma_n_sq
        i1 = s.omega * success_first_term(s, x) / 2.0
        i2 = capacity_kernel(gain, ratio / 2.0 + 1.0 / s.omega) / 12.0 \
            + capacity_kernel(gain, 2.0 * ratio / 3.0 + 1.0 / s.omega) / 4.0
        total += 2.0 * (i1 - i2) / s.omega
    return total / 2.0


# ============================================
# Legacy baseline and error metric
# ============================================

def legacy_ec(s: Scenario, m: LegacyModel) -> float:
    """
    (1/ln2)[e^{x₁}E₁(x₁) − e^{x₂}E₁(x₂)], x₁ = (1/γ̄)/(ζα₁+α₂), x₂ = (1/γ̄)/(ζα₁)

    The second term vanishes as ζ → 0 and is dropped at ζ = 0.
    """
    first = scaled_exp_integral_e1((1.0 / s.gamma_bar) / (m.zeta * s.alpha1 + s.alpha2))
    if m.zeta == 0.0:
        return first / LN2
    second = scaled_exp_integral_e1((1.0 / s.gamma_bar) / (m.zeta * s.alpha1))
    return max(0.0, (first - second) / LN2)


def normalized_error(exact: float, other: float) -> float:
    """|exact − other|/exact × 100"""
    if exact <= 0.0:
        raise UndefinedError(f"normalized error needs exact > 0, got {exact}")
    return abs(exact - other) / exact * 100.0


def error_summary(errors: Sequence[float]) -> dict:
    """{min, max, avg} reduction used by the capacity error table"""
    arr = np.asarray(errors, dtype=float)
    return {"min": float(arr.min()), "max": float(arr.max()), "avg": float(arr.mean())}


# ============================================
# Quadrature oracles
# ============================================

def ec_given_success_quadrature(s: Scenario, x: ConstellationPoint) -> float:
    """∫ log₂(1+Aβ²) f_{β_S}(β)dβ directly"""
    gain = _snr_gain(s, x)
    upper = _FADING_CUTOFF * math.sqrt(s.omega)
    return integrate_adaptive(
        lambda b: math.log2(1.0 + gain * b * b) * pdf_beta_success(s, x, b),
        0.0, upper, points=_fading_knots(s, x),
    ).value


def success_first_term_quadrature(s: Scenario, x: ConstellationPoint) -> float:
    """∫ log₂(1+Aβ²) f_β(β)dβ with unconditional fading"""
    gain = _snr_gain(s, x)
    return integrate_semi_infinite(
        lambda b: np.log2(1.0 + gain * np.asarray(b) ** 2) * rayleigh_pdf(s, b)
    ).value


def capacity_kernel_quadrature(gain: float, decay: float) -> float:
    return integrate_semi_infinite(
        lambda b: np.asarray(b) * np.log2(1.0 + gain * np.asarray(b) ** 2) * np.exp(-decay * np.asarray(b) ** 2)
    ).value


def legacy_ec_quadrature(s: Scenario, m: LegacyModel) -> float:
    return integrate_semi_infinite(
        lambda b: np.log2(1.0 + legacy_sinr(s, m, b)) * rayleigh_pdf(s, b)
    ).value

"""
Post-SIC QPSK Service
QPSK 성공 분기 통계: 성공 확률, 조건부 페이딩/잡음 분포, Ψ 커널, 복소 잡음 2차 모멘트

Only the top-right quadrant s₁ = (1+j)/√2 is modelled; the others follow by symmetry.
Each noise rail has variance σ_n², so the unconditional E[|N|²] is 2σ_n².
"""

import logging
import math
from functools import lru_cache
from typing import Dict, Literal, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from services.numerics import (
    integrate_2d,
    integrate_adaptive,
    q_function,
    std_normal_cdf,
)
from services.scenario import Scenario, noise_pdf, rayleigh_pdf

logger = logging.getLogger(__name__)

PsMethod = Literal["exact", "formula"]

# 잡음 적분 구간 (× σ_n)
_NOISE_SPAN = 10.0
_MARGINAL_GATE_TOL = 1e-3
_FADING_CUTOFF = 8.0


class QuadrantLevels(BaseModel):
    """Rail amplitudes λ_i (real) and λ_j (imaginary) of one superposed QPSK symbol"""
    model_config = ConfigDict(frozen=True)

    i: int
    j: int
    lambda_i: float
    lambda_j: float
    chi_i: float
    chi_j: float
    mu_i: float
    mu_j: float

    @property
    def equal_rails(self) -> bool:
        return self.i == self.j

    @property
    def label(self) -> str:
        return f"(λ{self.i},λ{self.j})"

    def swapped(self) -> "QuadrantLevels":
        """Imaginary rail seen as the real one"""
        return QuadrantLevels(i=self.j, j=self.i, lambda_i=self.lambda_j, lambda_j=self.lambda_i,
                              chi_i=self.chi_j, chi_j=self.chi_i, mu_i=self.mu_j, mu_j=self.mu_i)


class ComplexNoiseSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    re: float
    im: float


def rail_level(s: Scenario, k: int) -> float:
    """λ_k = (√α₁ + k√α₂)/√2, k ∈ {+1, −1}"""
    if k not in (1, -1):
        raise ValueError(f"rail index must be +1 or -1, got {k}")
    return (math.sqrt(s.alpha1) + k * math.sqrt(s.alpha2)) / math.sqrt(2.0)


def rail_mu(s: Scenario, level: float) -> float:
    """μ = √(λ²γ̄/(2+λ²γ̄))"""
    snr = level * level * s.gamma_bar
    return math.sqrt(snr / (2.0 + snr))


def quadrant_levels(s: Scenario, i: int, j: int) -> QuadrantLevels:
    li, lj = rail_level(s, i), rail_level(s, j)
    return QuadrantLevels(
        i=i, j=j, lambda_i=li, lambda_j=lj,
        chi_i=li / s.sigma_n, chi_j=lj / s.sigma_n,
        mu_i=rail_mu(s, li), mu_j=rail_mu(s, lj),
    )


def table_rails(s: Scenario) -> Tuple[QuadrantLevels, ...]:
    """(λ₁,λ₁), (λ₋₁,λ₋₁), (λ₁,λ₋₁), (λ₋₁,λ₁)"""
    return tuple(quadrant_levels(s, i, j) for i, j in ((1, 1), (-1, -1), (1, -1), (-1, 1)))


# ============================================
# Success probability
# ============================================

def qpsk_success_prob_given_beta(q: QuadrantLevels, beta):
    """p_S|β = [1−Q(βχ_i)][1−Q(βχ_j)]"""
    b = np.asarray(beta, dtype=float)
    out = (1.0 - q_function(b * q.chi_i)) * (1.0 - q_function(b * q.chi_j))
    return float(out) if np.ndim(beta) == 0 else out


def equal_rail_success_prob(mu: float) -> float:
    """
    p_S|λ = μ + 1/4 − (μ/π)·arctan(1/μ)

    From E_β[Q²(βχ)] = 1/4 − (μ/π)arctan(1/μ) (Craig's form of Q²).
    """
    if mu <= 0.0:
        return 0.25
    return mu + 0.25 - mu * math.atan(1.0 / mu) / math.pi


def qpsk_success_prob(s: Scenario, q: QuadrantLevels) -> float:
    """Rail-averaged p_S = ½p_S|λ_i + ½p_S|λ_j; exact when λ_i = λ_j"""
    return 0.5 * equal_rail_success_prob(q.mu_i) + 0.5 * equal_rail_success_prob(q.mu_j)


def qpsk_success_prob_exact(s: Scenario, q: QuadrantLevels) -> float:
    """E_β[(1−Q(βχ_i))(1−Q(βχ_j))] by quadrature"""
    upper = _FADING_CUTOFF * math.sqrt(s.omega)
    knots = [1.0 / q.chi_i, 1.0 / q.chi_j, 4.0 / min(q.chi_i, q.chi_j)]
    return integrate_adaptive(
        lambda b: float(rayleigh_pdf(s, b)) * qpsk_success_prob_given_beta(q, b),
        0.0, upper, points=knots,
    ).value


def _success_prob(s: Scenario, q: QuadrantLevels, method: PsMethod) -> float:
    if method == "formula":
        return qpsk_success_prob(s, q)
    return _cached_exact_success_prob(s, q)


@lru_cache(maxsize=256)
def _cached_exact_success_prob(s: Scenario, q: QuadrantLevels) -> float:
    if q.equal_rails:
        return equal_rail_success_prob(q.mu_i)
    return qpsk_success_prob_exact(s, q)


# ============================================
# Fading / noise densities
# ============================================

def qpsk_pdf_beta_success(s: Scenario, q: QuadrantLevels, beta, method: PsMethod = "exact"):
    """f_{β_S}(β) = (2β/(Ωp_S))e^{−β²/Ω}[1−Q(βχ_i)][1−Q(βχ_j)]"""
    b = np.asarray(beta, dtype=float)
    out = rayleigh_pdf(s, b) * qpsk_success_prob_given_beta(q, b) / _success_prob(s, q, method)
    return float(out) if np.ndim(beta) == 0 else out


def truncation_depth(q: QuadrantLevels, w: ComplexNoiseSample) -> float:
    """τ(w) = max(0, −w_R/λ_i, −w_I/λ_j): smallest β that keeps both rails correct"""
    return max(0.0, -w.re / q.lambda_i, -w.im / q.lambda_j)


def qpsk_joint_noise_pdf(s: Scenario, q: QuadrantLevels, w: ComplexNoiseSample,
                         method: PsMethod = "exact") -> float:
    """f_W(w) = (f_N(w)/p_S)·exp(−τ(w)²/Ω)"""
    tau = truncation_depth(q, w)
    base = float(noise_pdf(s, w.re)) * float(noise_pdf(s, w.im))
    return base * math.exp(-tau * tau / s.omega) / _success_prob(s, q, method)


def _printed_real_marginal(s: Scenario, q: QuadrantLevels, w_r: float, p_s: float) -> float:
    f_n = float(noise_pdf(s, w_r))
    if w_r >= 0.0:
        return f_n * (1.0 + q.mu_j) / (2.0 * p_s)
    survive = math.exp(-w_r * w_r / (q.lambda_i ** 2 * s.omega))
    inner = q.mu_j * float(std_normal_cdf(q.chi_j * w_r / (q.lambda_i * q.mu_j))) \
        + survive * float(std_normal_cdf(-q.chi_j * w_r / q.lambda_i))
    return f_n * inner / p_s


def marginal_by_quadrature(s: Scenario, q: QuadrantLevels, w_r: float,
                           method: PsMethod = "exact") -> float:
    """∫ f_W(w_r + j·w_i) dw_i"""
    span = _NOISE_SPAN * s.sigma_n
    kink = q.lambda_j * w_r / q.lambda_i
    return integrate_adaptive(
        lambda w_i: qpsk_joint_noise_pdf(s, q, ComplexNoiseSample(re=w_r, im=w_i), method),
        -span, span, tol=1e-10, points=[0.0, kink],
    ).value


@lru_cache(maxsize=256)
def real_marginal_agrees(s: Scenario, q: QuadrantLevels) -> bool:
    """Check the piecewise real-rail marginal against marginalisation of the joint density"""
    p_s = _success_prob(s, q, "exact")
    worst = 0.0
    for k in (-3.0, -1.5, -0.5, 0.5, 2.0):
        w_r = k * s.sigma_n
        peak = float(noise_pdf(s, 0.0))
        gap = abs(_printed_real_marginal(s, q, w_r, p_s) - marginal_by_quadrature(s, q, w_r)) / peak
        worst = max(worst, gap)
    if worst > _MARGINAL_GATE_TOL:
        logger.warning("⚠️ real-rail marginal disagrees with the joint density by %.2e for %s; "
                       "using quadrature marginal", worst, q.label)
        return False
    return True


def qpsk_pdf_noise_real(s: Scenario, q: QuadrantLevels, w_r: float) -> float:
    """
    f_{W_R}(w_R), piecewise on the sign of w_R

    w_R ≥ 0: f_{N_R}(w_R)(1+μ_j)/(2p_S)
    w_R < 0: (f_{N_R}(w_R)/p_S)[μ_jΦ(χ_j w_R/(λ_iμ_j)) + e^{−w_R²/(λ_i²Ω)}Φ(−χ_j w_R/λ_i)]
    """
    if not real_marginal_agrees(s, q):
        return marginal_by_quadrature(s, q, w_r)
    return _printed_real_marginal(s, q, w_r, _success_prob(s, q, "exact"))


def qpsk_pdf_noise_imag(s: Scenario, q: QuadrantLevels, w_i: float) -> float:
    """Imaginary-rail marginal: the real-rail one with i ↔ j"""
    return qpsk_pdf_noise_real(s, q.swapped(), w_i)


# ============================================
# Second moments
# ============================================

def psi_kernel(a: float, b: float) -> float:
    """
    Ψ(a,b) = ∫_{−∞}^0 w² N(w; 0, a²) Φ(bw) dw
           = a²[1/4 − (1/(2π))(arctan(ab) + ab/(1+a²b²))]
    """
    if a <= 0.0:
        raise ValueError(f"psi_kernel requires a > 0, got {a}")
    ab = a * b
    return a * a * (0.25 - (math.atan(ab) + ab / (1.0 + ab * ab)) / (2.0 * math.pi))


def psi_kernel_quadrature(a: float, b: float) -> float:
    # w = a·u 로 스케일을 없앤 뒤 적분
    ab = a * b
    value = integrate_adaptive(
        lambda u: u * u * math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi) * float(std_normal_cdf(ab * u)),
        -14.0, 0.0, tol=1e-13,
    ).value
    return a * a * value


def rail_second_moment(s: Scenario, q: QuadrantLevels, p_s: float) -> float:
    """
    E[W_R²] = (1/p_S)[σ_n²(1+μ_j)/4 + μ_jΨ(σ_n, ϖ₁) + μ_iΨ(σ_nμ_i, ϖ₂)]

    with ϖ₁ = χ_j/(λ_iμ_j) and ϖ₂ = −χ_j/λ_i.
    """
    sigma = s.sigma_n
    varpi1 = q.chi_j / (q.lambda_i * q.mu_j)
    varpi2 = -q.chi_j / q.lambda_i
    total = sigma * sigma * (1.0 + q.mu_j) / 4.0 \
        + q.mu_j * psi_kernel(sigma, varpi1) \
        + q.mu_i * psi_kernel(sigma * q.mu_i, varpi2)
    return total / p_s


def qpsk_rail_second_moments(s: Scenario, q: QuadrantLevels) -> Tuple[float, float]:
    """(E[W_R²], E[W_I²])"""
    p_s = _success_prob(s, q, "exact")
    return rail_second_moment(s, q, p_s), rail_second_moment(s, q.swapped(), p_s)


def qpsk_second_moment_w(s: Scenario, q: QuadrantLevels) -> float:
    """E[|W|²] = E[W_R²] + E[W_I²], which is 2E[W_R²] on equal rails"""
    m2_r, m2_i = qpsk_rail_second_moments(s, q)
    return m2_r + m2_i


def _joint_integral(s: Scenario, q: QuadrantLevels, weight) -> float:
    span = _NOISE_SPAN * s.sigma_n
    return integrate_2d(
        lambda w_r, w_i: weight(w_r, w_i) * qpsk_joint_noise_pdf(s, q, ComplexNoiseSample(re=w_r, im=w_i)),
        (-span, span), (-span, span), tol=1e-10,
        x_points=[0.0], y_points=lambda w_r: [0.0, q.lambda_j * w_r / q.lambda_i],
    ).value


def qpsk_second_moment_quadrature(s: Scenario, q: QuadrantLevels) -> float:
    """∫∫|w|² f_W(w) dw over the plane"""
    return _joint_integral(s, q, lambda w_r, w_i: w_r * w_r + w_i * w_i)


def qpsk_joint_normalization(s: Scenario, q: QuadrantLevels) -> float:
    return _joint_integral(s, q, lambda w_r, w_i: 1.0)


def qpsk_conditional_means(s: Scenario, q: QuadrantLevels) -> Tuple[float, float]:
    """(E[W_R], E[W_I]) by 1-D quadrature of the rail marginals"""
    span = _NOISE_SPAN * s.sigma_n
    means = []
    for levels in (q, q.swapped()):
        f = lambda w, lv=levels: w * qpsk_pdf_noise_real(s, lv, w)
        means.append(integrate_adaptive(f, -span, 0.0).value + integrate_adaptive(f, 0.0, span).value)
    return means[0], means[1]


def qpsk_noise_variance(s: Scenario, q: QuadrantLevels) -> float:
    """var[W] = E[|W|²] − |E[W]|²"""
    m_r, m_i = qpsk_conditional_means(s, q)
    return qpsk_second_moment_w(s, q) - (m_r * m_r + m_i * m_i)


def qpsk_outage_given_success(s: Scenario, q: QuadrantLevels) -> float:
    """∫₀^ε f_{β_S}(β)dβ with ε = √(γ_th E[|W|²]/α₂), by quadrature"""
    eps = math.sqrt(s.gamma_th * qpsk_second_moment_w(s, q) / s.alpha2)
    if eps == 0.0:
        return 0.0
    value = integrate_adaptive(lambda b: qpsk_pdf_beta_success(s, q, b), 0.0, eps).value
    return min(1.0, max(0.0, value))


def qpsk_summary(s: Scenario, q: QuadrantLevels) -> Dict[str, float]:
    """Per-rail-pair numbers shown in the QPSK moment table"""
    m2_r, m2_i = qpsk_rail_second_moments(s, q)
    return {
        "p_success": _success_prob(s, q, "exact"),
        "p_success_formula": qpsk_success_prob(s, q),
        "m2_real": m2_r,
        "m2_imag": m2_i,
        "m2_total": m2_r + m2_i,
        "variance": qpsk_noise_variance(s, q),
        "noise_power": 2.0 * s.sigma_n_sq,
    }

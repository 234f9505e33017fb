"""
Printed closed forms
발표된 그대로의 수식 (검증/비교 전용, 계산 경로에서는 사용하지 않음)

Each function here has a corrected counterpart elsewhere in services/. They are
kept so the validation report and the QPSK moment table can show how far the
printed expressions land from the defining integrals.
"""

import math
from typing import Dict, List

from services.capacity_service import capacity_kernel, success_first_term
from services.numerics import q_function, std_normal_cdf
from services.outage_service import eps_success
from services.postsic_bpsk import decision_mu, sic_success_prob, second_moment_w
from services.postsic_qpsk import QuadrantLevels
from services.scenario import ConstellationPoint, Scenario, representative_points

# validation 리포트의 "known, handled" 항목
KNOWN_INCONSISTENCIES: List[Dict[str, str]] = [
    {
        "id": "success-outage-closed-form",
        "printed": "(1/p_S)[1/2 − e^{−ε²/Ω}(1 + Q(ε√(γ̄X²/Ω))) + φΦ(ε√((γ̄X²+2)/Ω))]",
        "used": "(1/p_S)[1/2 − e^{−ε²/Ω}Φ(|X|ε/σ_n) + (φ/2)erf(ε√((X²γ̄+2)/(2Ω)))]",
        "arbiter": "quadrature of the success-branch fading CDF",
    },
    {
        "id": "capacity-approximation-sign",
        "printed": "(2/Ω)·Pr(X)·ΣΣ (I₁ + I₂)",
        "used": "(2/Ω)·(1/4)·ΣΣ (I₁ − I₂)",
        "arbiter": "normalized-error table against the exact capacity",
    },
    {
        "id": "legacy-zeta-bound",
        "printed": "ζ ∈ [0, 6.036] for α₁=0.8, R=0.5",
        "used": "α₂/(α₁γ_th) = 0.6036",
        "arbiter": "direct arithmetic of the bound",
    },
    {
        "id": "qpsk-equal-rail-success",
        "printed": "μ + 1/4 − arctan(μ)/π",
        "used": "μ + 1/4 − (μ/π)arctan(1/μ)",
        "arbiter": "quadrature of E_β[(1−Q(βχ))²]",
    },
    {
        "id": "qpsk-psi-kernel",
        "printed": "(a²/2)[1/2 − ba/√(2π(1+b²a²))]",
        "used": "a²[1/4 − (arctan(ab) + ab/(1+a²b²))/(2π)]",
        "arbiter": "quadrature of ∫_{−∞}^0 w²N(w;0,a²)Φ(bw)dw",
    },
    {
        "id": "qpsk-unequal-rail-moment",
        "printed": "E[|W|²] = 2E[W_R²] on every rail pair",
        "used": "E[|W|²] = E[W_R²] + E[W_I²]",
        "arbiter": "2-D quadrature of |w|² over the joint noise density",
    },
]


def outage_given_success(s: Scenario, x: ConstellationPoint) -> float:
    eps = eps_success(s, x)
    phi = decision_mu(s, x)
    tail = float(q_function(eps * math.sqrt(s.gamma_bar * x.value ** 2 / s.omega)))
    head = float(std_normal_cdf(eps * math.sqrt((s.gamma_bar * x.value ** 2 + 2.0) / s.omega)))
    value = 0.5 - math.exp(-eps * eps / s.omega) * (1.0 + tail) + phi * head
    return value / sic_success_prob(s, x)


def ec_closed_form_approx(s: Scenario) -> float:
    """Same intermediates as the corrected approximation, summed with I₁ + I₂"""
    total = 0.0
    for x in representative_points(s):
        gain = s.alpha2 / second_moment_w(s, x)
        ratio = x.value ** 2 / s.sigma_n_sq
        i1 = s.omega * success_first_term(s, x) / 2.0
        i2 = capacity_kernel(gain, ratio / 2.0 + 1.0 / s.omega) / 12.0 \
            + capacity_kernel(gain, 2.0 * ratio / 3.0 + 1.0 / s.omega) / 4.0
        total += 2.0 * (i1 + i2) / s.omega
    return total / 2.0


def equal_rail_success_prob(mu: float) -> float:
    return mu + 0.25 - math.atan(mu) / math.pi


def qpsk_success_prob(q: QuadrantLevels) -> float:
    return 0.5 * equal_rail_success_prob(q.mu_i) + 0.5 * equal_rail_success_prob(q.mu_j)


def psi_kernel(a: float, b: float) -> float:
    ab = a * b
    return 0.5 * a * a * (0.5 - ab / math.sqrt(2.0 * math.pi * (1.0 + ab * ab)))


def qpsk_second_moment_w(s: Scenario, q: QuadrantLevels) -> float:
    """2E[W_R²] with the printed kernel and the printed rail-averaged p_S"""
    sigma = s.sigma_n
    varpi1 = q.chi_j / (q.lambda_i * q.mu_j)
    varpi2 = -q.chi_j / q.lambda_i
    bracket = sigma * sigma * (1.0 + q.mu_j) / 4.0 \
        + q.mu_j * psi_kernel(sigma, varpi1) \
        + q.mu_i * psi_kernel(sigma * q.mu_i, varpi2)
    return 2.0 * bracket / qpsk_success_prob(q)

"""
Post-SIC BPSK Service
SIC 성공/실패 조건부 페이딩·잡음 분포, 성공 확률, 조건부 2차 모멘트

Everything depends on |X_ij| only; the sign of X_ij is an orientation flag that
flips which half-line of the noise is truncated.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import integrate

from services.numerics import (
    ArrayLike,
    integrate_adaptive,
    q_function,
    std_normal_cdf,
)
from services.scenario import (
    ConstellationPoint,
    Scenario,
    bpsk_constellation,
    noise_pdf,
    rayleigh_pdf,
)

logger = logging.getLogger(__name__)

Branch = Literal["success", "failure", "unconditional"]
Variable = Literal["fading", "noise"]

DEFAULT_CURVE_POINTS = 2048
FADING_SPAN = 5.0   # × √Ω
NOISE_SPAN = 6.0    # × σ_n


class ConditionalChannelStats(BaseModel):
    """Per-symbol bundle feeding outage and capacity"""
    model_config = ConfigDict(frozen=True)

    point: ConstellationPoint
    p_success: float
    p_failure: float
    m2_w: float
    m2_z: float


@dataclass
class PdfCurve:
    """Discretised density on an ordered grid"""
    grid: np.ndarray
    density: np.ndarray
    branch: str
    variable: str
    params: Dict[str, float] = field(default_factory=dict)

    def integral(self) -> float:
        return float(integrate.simpson(self.density, x=self.grid))

    def header(self) -> str:
        params = " ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"# branch={self.branch} variable={self.variable} {params}".rstrip()

    def to_csv(self) -> str:
        """Two-column CSV: parameter comment row, column header, then rows"""
        column = "beta" if self.variable == "fading" else "w"
        lines = [self.header(), f"{column},density"]
        lines.extend(f"{x!r},{y!r}" for x, y in zip(self.grid.tolist(), self.density.tolist()))
        return "\n".join(lines) + "\n"


# ============================================
# Success probability
# ============================================

def decision_mu(s: Scenario, x: ConstellationPoint) -> float:
    """μ = √(X²γ̄/(X²γ̄+2))"""
    snr = x.value ** 2 * s.gamma_bar
    return math.sqrt(snr / (snr + 2.0))


def _one_minus_mu(s: Scenario, x: ConstellationPoint) -> float:
    # 1−μ = 2/((X²γ̄+2)(1+μ)) : 고SNR에서 상쇄 오차 방지
    snr = x.value ** 2 * s.gamma_bar
    return 2.0 / ((snr + 2.0) * (1.0 + decision_mu(s, x)))


def sic_success_prob(s: Scenario, x: ConstellationPoint) -> float:
    """p_S = 1/2 + (1/2)√(X²/(X² + 2/γ̄))"""
    return 0.5 * (1.0 + decision_mu(s, x))


def sic_failure_prob(s: Scenario, x: ConstellationPoint) -> float:
    """p_F = (1−μ)/2, computed without cancellation"""
    return 0.5 * _one_minus_mu(s, x)


# ============================================
# Fading marginals
# ============================================

def pdf_beta_success(s: Scenario, x: ConstellationPoint, beta: ArrayLike) -> ArrayLike:
    """f_{β_S}(β) = (2β/(Ω p_S))·Φ(|X|β/σ_n)·e^{−β²/Ω}"""
    b = np.asarray(beta, dtype=float)
    a = x.magnitude / s.sigma_n
    out = rayleigh_pdf(s, b) * std_normal_cdf(a * b) / sic_success_prob(s, x)
    return float(out) if np.ndim(beta) == 0 else out


def pdf_beta_failure(s: Scenario, x: ConstellationPoint, beta: ArrayLike) -> ArrayLike:
    """f_{β_F}(β) = (2β/(Ω p_F))·Q(|X|β/σ_n)·e^{−β²/Ω}"""
    b = np.asarray(beta, dtype=float)
    a = x.magnitude / s.sigma_n
    out = rayleigh_pdf(s, b) * q_function(a * b) / sic_failure_prob(s, x)
    return float(out) if np.ndim(beta) == 0 else out


# ============================================
# Noise marginals
# ============================================

def _truncation_survival(s: Scenario, x: ConstellationPoint, w: np.ndarray) -> np.ndarray:
    """Pr(β ≥ |w|/|X|) = e^{−w²/(X²Ω)}"""
    return np.exp(-w * w / (x.value ** 2 * s.omega))


def pdf_noise_success(s: Scenario, x: ConstellationPoint, w: ArrayLike) -> ArrayLike:
    """
    f_W(w): plain f_N/p_S on the open half-line, truncated by e^{−w²/(X²Ω)} on the other

    For X > 0 the open half-line is w ≥ 0; a negative X flips it.
    """
    arr = np.asarray(w, dtype=float)
    open_side = x.orientation * arr >= 0
    factor = np.where(open_side, 1.0, _truncation_survival(s, x, arr))
    out = noise_pdf(s, arr) * factor / sic_success_prob(s, x)
    return float(out) if np.ndim(w) == 0 else out


def pdf_noise_failure(s: Scenario, x: ConstellationPoint, z: ArrayLike) -> ArrayLike:
    """f_Z(z) = (f_N(z)/p_F)[1 − e^{−z²/(X²Ω)}] on the failure half-line, 0 elsewhere"""
    arr = np.asarray(z, dtype=float)
    failure_side = x.orientation * arr < 0
    factor = np.where(failure_side, -np.expm1(-arr * arr / (x.value ** 2 * s.omega)), 0.0)
    out = noise_pdf(s, arr) * factor / sic_failure_prob(s, x)
    return float(out) if np.ndim(z) == 0 else out


def in_success_region(x: ConstellationPoint, beta: ArrayLike, n: ArrayLike) -> ArrayLike:
    """Y = βX + n decided correctly; the boundary Y = 0 belongs to success"""
    return x.orientation * (np.asarray(beta) * x.value + np.asarray(n)) >= 0


def joint_pdf(s: Scenario, x: ConstellationPoint, branch: Branch,
              beta: ArrayLike, n: ArrayLike) -> ArrayLike:
    """
    Branch-conditioned joint density of (β, N)

    Args:
        branch: "success", "failure" or "unconditional"
        beta: fading amplitude(s), β ≥ 0
        n: noise sample(s), broadcast against beta

    Returns:
        f_β(β)f_N(n)/p_branch inside the branch region, 0 outside
    """
    b = np.asarray(beta, dtype=float)
    nn = np.asarray(n, dtype=float)
    base = rayleigh_pdf(s, b) * noise_pdf(s, nn)
    if branch == "unconditional":
        out = base
    elif branch == "success":
        out = np.where(in_success_region(x, b, nn), base / sic_success_prob(s, x), 0.0)
    elif branch == "failure":
        out = np.where(in_success_region(x, b, nn), 0.0, base / sic_failure_prob(s, x))
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return float(out) if np.ndim(out) == 0 else out


# ============================================
# Conditional moments
# ============================================

def second_moment_w(s: Scenario, x: ConstellationPoint) -> float:
    """
    E[W²] = (σ_n²/(2p_S))(1 + μ³)

    With 2p_S = 1+μ this is σ_n²(1 − μ + μ²).
    """
    mu = decision_mu(s, x)
    return s.sigma_n_sq * (1.0 - mu + mu * mu)


def second_moment_z(s: Scenario, x: ConstellationPoint) -> float:
    """E[Z²] = (σ_n²/(2p_F))(1 − μ³) = σ_n²(1 + μ + μ²)"""
    mu = decision_mu(s, x)
    return s.sigma_n_sq * (1.0 + mu + mu * mu)


def _noise_split(s: Scenario, x: ConstellationPoint) -> Tuple[float, float, float]:
    span = NOISE_SPAN * 2.0 * s.sigma_n
    return -span, 0.0, span


def mean_w(s: Scenario, x: ConstellationPoint) -> float:
    """E[W] by quadrature (no closed form used)"""
    lo, mid, hi = _noise_split(s, x)
    f = lambda w: w * pdf_noise_success(s, x, w)
    return integrate_adaptive(f, lo, mid).value + integrate_adaptive(f, mid, hi).value


def mean_z(s: Scenario, x: ConstellationPoint) -> float:
    """E[Z] by quadrature over the failure half-line"""
    lo, _, hi = _noise_split(s, x)
    f = lambda z: z * pdf_noise_failure(s, x, z)
    if x.orientation > 0:
        return integrate_adaptive(f, lo, 0.0).value
    return integrate_adaptive(f, 0.0, hi).value


def channel_stats(s: Scenario, x: ConstellationPoint) -> ConditionalChannelStats:
    return ConditionalChannelStats(
        point=x,
        p_success=sic_success_prob(s, x),
        p_failure=sic_failure_prob(s, x),
        m2_w=second_moment_w(s, x),
        m2_z=second_moment_z(s, x),
    )


def all_channel_stats(s: Scenario) -> List[ConditionalChannelStats]:
    return [channel_stats(s, x) for x in bpsk_constellation(s)]


# ============================================
# Curves (figure data)
# ============================================

def fading_grid(s: Scenario, n_points: int = DEFAULT_CURVE_POINTS) -> np.ndarray:
    return np.linspace(0.0, FADING_SPAN * math.sqrt(s.omega), n_points)


def noise_grid(s: Scenario, n_points: int = DEFAULT_CURVE_POINTS) -> np.ndarray:
    span = NOISE_SPAN * s.sigma_n
    return np.linspace(-span, span, n_points)


def _curve_params(s: Scenario, x: Optional[ConstellationPoint]) -> Dict[str, float]:
    params = {"alpha1": s.alpha1, "snr_db": s.snr_db, "omega": s.omega}
    if x is not None:
        params["x"] = x.value
    return params


def fading_curve(s: Scenario, x: ConstellationPoint, branch: Branch,
                 grid: Optional[np.ndarray] = None) -> PdfCurve:
    """f_β, f_{β_S} or f_{β_F} on the default [0, 5√Ω] grid"""
    g = fading_grid(s) if grid is None else np.asarray(grid, dtype=float)
    if branch == "success":
        density = pdf_beta_success(s, x, g)
    elif branch == "failure":
        density = pdf_beta_failure(s, x, g)
    else:
        density = rayleigh_pdf(s, g)
    return PdfCurve(grid=g, density=np.asarray(density), branch=branch,
                    variable="fading", params=_curve_params(s, x))


def noise_curve(s: Scenario, x: ConstellationPoint, branch: Branch,
                grid: Optional[np.ndarray] = None) -> PdfCurve:
    """f_N, f_W or f_Z on the default ±6σ_n grid"""
    g = noise_grid(s) if grid is None else np.asarray(grid, dtype=float)
    if branch == "success":
        density = pdf_noise_success(s, x, g)
    elif branch == "failure":
        density = pdf_noise_failure(s, x, g)
    else:
        density = noise_pdf(s, g)
    return PdfCurve(grid=g, density=np.asarray(density), branch=branch,
                    variable="noise", params=_curve_params(s, x))


def curve_panel(s: Scenario, x: ConstellationPoint) -> Dict[str, PdfCurve]:
    """The six conditional/unconditional curves of one symbol"""
    panel: Dict[str, PdfCurve] = {}
    for branch in ("unconditional", "success", "failure"):
        panel[f"fading_{branch}"] = fading_curve(s, x, branch)
        panel[f"noise_{branch}"] = noise_curve(s, x, branch)
    logger.debug("✅ curve panel built for %s at %.1f dB", x.label, s.snr_db)
    return panel

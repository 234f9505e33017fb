"""
Scenario Service
System parameters, the superposed BPSK constellation and the legacy imperfect-SIC model

Every derived symbol (α₂, σ_n², γ_th) is computed here and nowhere else.
"""

import math
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from services.errors import ScenarioError
from services.numerics import ArrayLike


class Scenario(BaseModel):
    """Two-user downlink NOMA link seen by the near user"""
    model_config = ConfigDict(frozen=True)

    alpha1: float = Field(gt=0.5, lt=1.0, description="far-user power fraction")
    gamma_bar: float = Field(gt=0.0, description="average SNR Ω/σ_n² (linear)")
    omega: float = Field(default=1.0, gt=0.0, description="mean fading power E[β²]")
    rate: float = Field(gt=0.0, description="near-user target rate (bits/s/Hz)")

    @property
    def alpha2(self) -> float:
        return 1.0 - self.alpha1

    @property
    def sigma_n_sq(self) -> float:
        return self.omega / self.gamma_bar

    @property
    def sigma_n(self) -> float:
        return math.sqrt(self.sigma_n_sq)

    @property
    def gamma_th(self) -> float:
        return 2.0 ** self.rate - 1.0

    @property
    def snr_db(self) -> float:
        return 10.0 * math.log10(self.gamma_bar)

    def replace(self, **changes: Any) -> "Scenario":
        """Validated copy; accepts snr_db in place of gamma_bar"""
        values = {"alpha1": self.alpha1, "omega": self.omega, "rate": self.rate,
                  "snr_db": self.snr_db}
        if "gamma_bar" in changes:
            changes["snr_db"] = 10.0 * math.log10(changes.pop("gamma_bar"))
        values.update(changes)
        return build_scenario(values["alpha1"], values["snr_db"], values["omega"], values["rate"])

    def to_config(self) -> Dict[str, float]:
        return {"alpha1": self.alpha1, "snr_db": self.snr_db, "omega": self.omega, "rate": self.rate}


class ConstellationPoint(BaseModel):
    """Superposed BPSK symbol X_ij = ī√α₁ + j̄√α₂"""
    model_config = ConfigDict(frozen=True)

    i: int = Field(ge=0, le=1, description="far-user bit")
    j: int = Field(ge=0, le=1, description="near-user bit")
    value: float
    prob: float = 0.25

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    @property
    def orientation(self) -> int:
        """+1 when success means Y ≥ 0, −1 when the decision intervals flip"""
        return 1 if self.value > 0 else -1

    @property
    def label(self) -> str:
        return f"X{self.i}{self.j}"


class LegacyModel(BaseModel):
    """Residual-interference factor ζ = η² of the conventional analysis"""
    model_config = ConfigDict(frozen=True)

    zeta: float = Field(default=0.0, ge=0.0)

    @classmethod
    def from_eta(cls, eta: float) -> "LegacyModel":
        if not 0.0 <= eta <= 1.0:
            raise ScenarioError("eta", f"must lie in [0, 1], got {eta}")
        return cls(zeta=eta * eta)

    @property
    def eta(self) -> Optional[float]:
        # η는 ζ ≤ 1일 때만 정의됨 (스윕은 ζ > 1까지 허용)
        return math.sqrt(self.zeta) if self.zeta <= 1.0 else None


def build_scenario(alpha1: float, gamma_bar_db: float, omega: float = 1.0, rate: float = 1.0) -> Scenario:
    """
    Build a fully derived Scenario

    Args:
        alpha1: far-user power fraction, 0.5 < α₁ < 1
        gamma_bar_db: average SNR in dB (the only place dB is accepted)
        omega: mean fading power Ω
        rate: target rate R in bits/s/Hz

    Returns:
        Scenario

    Raises:
        ScenarioError naming the offending field
    """
    checks = (
        ("alpha1", alpha1, 0.5 < alpha1 < 1.0, "must satisfy 0.5 < alpha1 < 1"),
        ("snr_db", gamma_bar_db, math.isfinite(gamma_bar_db), "must be finite"),
        ("omega", omega, omega > 0.0 and math.isfinite(omega), "must be positive"),
        ("rate", rate, rate > 0.0 and math.isfinite(rate), "must be positive"),
    )
    for field, value, ok, message in checks:
        if not ok:
            raise ScenarioError(field, f"{message}, got {value}")
    try:
        gamma_bar = 10.0 ** (gamma_bar_db / 10.0)
    except OverflowError:
        gamma_bar = math.inf
    # 극단적인 dB 값은 γ̄가 0 또는 inf 로 넘어감
    if not 0.0 < gamma_bar < math.inf:
        raise ScenarioError("snr_db", f"average SNR out of floating-point range, got {gamma_bar_db} dB")
    return Scenario(alpha1=alpha1, gamma_bar=gamma_bar, omega=omega, rate=rate)


def scenario_from_config(values: Mapping[str, Any]) -> Scenario:
    """Scenario from a flat key=value mapping (keys alpha1, snr_db, omega, rate)"""
    try:
        return build_scenario(float(values["alpha1"]), float(values["snr_db"]),
                              float(values.get("omega", 1.0)), float(values["rate"]))
    except KeyError as e:
        raise ScenarioError(str(e.args[0]), "missing from config")


def bpsk_constellation(s: Scenario) -> Tuple[ConstellationPoint, ...]:
    """(X00, X01, X10, X11)"""
    a1, a2 = math.sqrt(s.alpha1), math.sqrt(s.alpha2)
    return tuple(
        ConstellationPoint(i=i, j=j, value=(2 * i - 1) * a1 + (2 * j - 1) * a2)
        for i in (0, 1) for j in (0, 1)
    )


def representative_points(s: Scenario) -> Tuple[ConstellationPoint, ConstellationPoint]:
    """(X11, X10): every statistic depends on |X_ij| only, so these two cover all four"""
    points = bpsk_constellation(s)
    return points[3], points[2]


# ============================================
# Unconditional fading / noise densities
# ============================================

def rayleigh_pdf(s: Scenario, beta: ArrayLike) -> ArrayLike:
    """f_β(β) = (2β/Ω)e^{−β²/Ω}, β ≥ 0"""
    b = np.asarray(beta, dtype=float)
    return np.where(b >= 0, 2.0 * b / s.omega * np.exp(-b * b / s.omega), 0.0)


def rayleigh_cdf(s: Scenario, beta: ArrayLike) -> ArrayLike:
    b = np.asarray(beta, dtype=float)
    return np.where(b >= 0, -np.expm1(-b * b / s.omega), 0.0)


def noise_pdf(s: Scenario, n: ArrayLike) -> ArrayLike:
    """Real-rail AWGN density N(0, σ_n²)"""
    x = np.asarray(n, dtype=float)
    return np.exp(-x * x / (2.0 * s.sigma_n_sq)) / math.sqrt(2.0 * math.pi * s.sigma_n_sq)


def legacy_sinr(s: Scenario, m: LegacyModel, beta: ArrayLike) -> ArrayLike:
    """α₂β² / (ζα₁β² + σ_n²)"""
    b2 = np.asarray(beta, dtype=float) ** 2
    return s.alpha2 * b2 / (m.zeta * s.alpha1 * b2 + s.sigma_n_sq)

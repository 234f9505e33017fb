"""
Validation Service
불변식 검사 스위트 (fast / full) 와 기계 판독용 리포트

Suites:
    mixture      p_S·f_S + p_F·f_F = f and p_S·E[W²] + p_F·E[Z²] = σ_n² on random scenarios
    normalization  every analytic PDF curve integrates to 1
    oracle       closed forms against their defining integrals
    montecarlo   analytic outage / capacity inside the simulator's 3-stderr band
"""

import logging
import math
import time
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from config.settings import DEFAULT_SEED
from services.capacity_service import (
    capacity_kernel,
    capacity_kernel_quadrature,
    ec_given_success_exact,
    ec_given_success_quadrature,
    ec_total_exact,
    legacy_ec,
    legacy_ec_quadrature,
    success_first_term,
    success_first_term_quadrature,
)
from services.montecarlo_service import McConfig, simulate_bpsk_ec, simulate_bpsk_outage
from services.numerics import integrate_adaptive
from services.outage_service import (
    outage_given_failure,
    outage_given_failure_quadrature,
    outage_given_success,
    outage_given_success_quadrature,
    outage_total,
)
from services import printed_forms
from services.postsic_bpsk import (
    NOISE_SPAN,
    curve_panel,
    pdf_beta_failure,
    pdf_beta_success,
    pdf_noise_failure,
    pdf_noise_success,
    second_moment_w,
    second_moment_z,
    sic_failure_prob,
    sic_success_prob,
)
from services.postsic_qpsk import (
    equal_rail_success_prob,
    psi_kernel,
    psi_kernel_quadrature,
    qpsk_second_moment_quadrature,
    qpsk_second_moment_w,
    qpsk_success_prob_exact,
    table_rails,
)
from services.reproduce_service import OUTAGE_SPOTS
from services.scenario import (
    LegacyModel,
    Scenario,
    build_scenario,
    noise_pdf,
    rayleigh_pdf,
    representative_points,
)

logger = logging.getLogger(__name__)

Level = Literal["fast", "full"]

MIXTURE_TOL = 1e-12
NORMALIZATION_TOL = 1e-6
ORACLE_TOL = 1e-6
ORACLE_2D_TOL = 1e-4

# level별 규모
_MIXTURE_SCENARIOS = {"fast": 200, "full": 1000}
_MC_SAMPLES = {"fast": 200_000, "full": 10_000_000}
_ORACLE_GRID = {
    "fast": {"snr_db": (0.0, 20.0), "alpha1": (0.6, 0.8), "rate": (0.5, 2.0)},
    "full": {"snr_db": (-10.0, 0.0, 10.0, 20.0, 30.0, 40.0),
             "alpha1": (0.55, 0.65, 0.75, 0.85, 0.95),
             "rate": (0.25, 1.0, 4.0)},
}
_QPSK_2D_SNRS = {"fast": (10.0,), "full": (0.0, 10.0, 20.0)}
_FAST_MC_SPOTS = (OUTAGE_SPOTS[1], OUTAGE_SPOTS[7], OUTAGE_SPOTS[10])


class SuiteResult(BaseModel):
    name: str
    passed: bool
    checks: int
    worst: float = Field(description="largest deviation seen, in the suite's own unit")
    failures: List[str] = Field(default_factory=list)
    seconds: float = 0.0


class KnownInconsistency(BaseModel):
    id: str
    status: str = "known, handled"
    printed: str
    used: str
    arbiter: str
    gap: Optional[float] = None


class ValidationReport(BaseModel):
    level: str
    passed: bool
    suites: List[SuiteResult]
    known_inconsistencies: List[KnownInconsistency]


class _Tally:
    """Collects check outcomes for one suite"""

    def __init__(self, name: str):
        self.name = name
        self.checks = 0
        self.worst = 0.0
        self.failures: List[str] = []
        self._started = time.perf_counter()

    def compare(self, label: str, value: float, reference: float, tol: float,
                relative: bool = False) -> None:
        gap = abs(value - reference)
        if relative:
            gap /= max(abs(reference), 1.0)
        self.checks += 1
        self.worst = max(self.worst, gap)
        if not gap <= tol:
            self.failures.append(f"{label}: {value!r} vs {reference!r} (gap {gap:.3e} > {tol:.0e})")

    def expect(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks += 1
        if not ok:
            self.failures.append(f"{label}: {detail}")

    def result(self) -> SuiteResult:
        elapsed = time.perf_counter() - self._started
        passed = not self.failures
        logger.info("%s %s: %d checks, worst %.3e (%.1fs)",
                    "✅" if passed else "❌", self.name, self.checks, self.worst, elapsed)
        return SuiteResult(name=self.name, passed=passed, checks=self.checks, worst=self.worst,
                           failures=self.failures[:50], seconds=round(elapsed, 3))


def random_scenarios(count: int, seed: int = DEFAULT_SEED) -> List[Scenario]:
    rng = np.random.default_rng(seed)
    return [
        build_scenario(float(rng.uniform(0.55, 0.95)), float(rng.uniform(-10.0, 40.0)),
                       omega=float(rng.uniform(0.5, 2.0)), rate=float(rng.uniform(0.25, 4.0)))
        for _ in range(count)
    ]


def oracle_scenarios(level: Level) -> List[Scenario]:
    grid = _ORACLE_GRID[level]
    return [build_scenario(a, snr, rate=r)
            for snr in grid["snr_db"] for a in grid["alpha1"] for r in grid["rate"]]


# ============================================
# Suites
# ============================================

def mixture_suite(level: Level) -> SuiteResult:
    tally = _Tally("mixture")
    for s in random_scenarios(_MIXTURE_SCENARIOS[level]):
        beta = np.linspace(0.0, 4.0 * math.sqrt(s.omega), 41)
        noise = np.linspace(-5.0 * s.sigma_n, 5.0 * s.sigma_n, 41)
        f_beta = rayleigh_pdf(s, beta)
        f_noise = noise_pdf(s, noise)
        for x in representative_points(s):
            p_s, p_f = sic_success_prob(s, x), sic_failure_prob(s, x)
            tally.compare(f"p_S + p_F {x.label} γ̄={s.gamma_bar:.4g}", p_s + p_f, 1.0, MIXTURE_TOL)
            mixed = p_s * pdf_beta_success(s, x, beta) + p_f * pdf_beta_failure(s, x, beta)
            scale = max(1.0, float(f_beta.max()))
            tally.compare(f"fading mixture {x.label} γ̄={s.gamma_bar:.4g}",
                          float(np.max(np.abs(mixed - f_beta))) / scale, 0.0, MIXTURE_TOL)
            mixed = p_s * pdf_noise_success(s, x, noise) + p_f * pdf_noise_failure(s, x, noise)
            scale = max(1.0, float(f_noise.max()))
            tally.compare(f"noise mixture {x.label} γ̄={s.gamma_bar:.4g}",
                          float(np.max(np.abs(mixed - f_noise))) / scale, 0.0, MIXTURE_TOL)
            total = p_s * second_moment_w(s, x) + p_f * second_moment_z(s, x)
            tally.compare(f"moment mixture {x.label} γ̄={s.gamma_bar:.4g}",
                          total / s.sigma_n_sq, 1.0, MIXTURE_TOL)
    return tally.result()


def normalization_suite(level: Level) -> SuiteResult:
    tally = _Tally("normalization")
    for snr_db in (0.0, 10.0, 20.0):
        s = build_scenario(0.8, snr_db)
        for x in representative_points(s):
            for name, curve in curve_panel(s, x).items():
                tally.compare(f"{name} {x.label} {snr_db:g} dB", curve.integral(), 1.0, NORMALIZATION_TOL)
    return tally.result()


def _second_moment_quadrature(s: Scenario, x, density: Callable) -> float:
    span = NOISE_SPAN * 2.0 * s.sigma_n
    f = lambda w: w * w * float(density(s, x, w))
    return integrate_adaptive(f, -span, 0.0).value + integrate_adaptive(f, 0.0, span).value


def oracle_suite(level: Level) -> SuiteResult:
    tally = _Tally("oracle")
    for s in oracle_scenarios(level):
        tag = f"α1={s.alpha1} {s.snr_db:.0f} dB R={s.rate}"
        for x in representative_points(s):
            tally.compare(f"P_OS {x.label} {tag}", outage_given_success(s, x),
                          outage_given_success_quadrature(s, x), ORACLE_TOL)
            tally.compare(f"P_OF {x.label} {tag}", outage_given_failure(s, x),
                          outage_given_failure_quadrature(s, x), ORACLE_TOL)
            tally.compare(f"C_S {x.label} {tag}", ec_given_success_exact(s, x),
                          ec_given_success_quadrature(s, x), ORACLE_TOL)
            tally.compare(f"I1 {x.label} {tag}", success_first_term(s, x),
                          success_first_term_quadrature(s, x), ORACLE_TOL)
            tally.compare(f"E[W²] {x.label} {tag}", second_moment_w(s, x),
                          _second_moment_quadrature(s, x, pdf_noise_success),
                          ORACLE_TOL, relative=True)
            tally.compare(f"E[Z²] {x.label} {tag}", second_moment_z(s, x),
                          _second_moment_quadrature(s, x, pdf_noise_failure),
                          ORACLE_TOL, relative=True)
        for zeta in (0.0, 0.01, 0.5):
            m = LegacyModel(zeta=zeta)
            tally.compare(f"legacy EC ζ={zeta} {tag}", legacy_ec(s, m), legacy_ec_quadrature(s, m), ORACLE_TOL)
        for q in table_rails(s)[:2]:
            tally.compare(f"QPSK p_S {q.label} {tag}", equal_rail_success_prob(q.mu_i),
                          qpsk_success_prob_exact(s, q), ORACLE_TOL)

    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(20 if level == "fast" else 200):
        a, b = float(rng.uniform(0.05, 3.0)), float(rng.uniform(-20.0, 20.0))
        tally.compare(f"Ψ({a:.3g},{b:.3g})", psi_kernel(a, b), psi_kernel_quadrature(a, b), ORACLE_TOL)
        gain, decay = float(rng.uniform(0.1, 1000.0)), float(rng.uniform(0.5, 50.0))
        tally.compare(f"kernel({gain:.3g},{decay:.3g})", capacity_kernel(gain, decay),
                      capacity_kernel_quadrature(gain, decay), ORACLE_TOL)

    for snr_db in _QPSK_2D_SNRS[level]:
        s = build_scenario(0.8, snr_db)
        for q in table_rails(s):
            tally.compare(f"QPSK E|W|² {q.label} {snr_db:g} dB", qpsk_second_moment_w(s, q),
                          qpsk_second_moment_quadrature(s, q), ORACLE_2D_TOL, relative=True)

    # 발표된 P_OS 식은 적분값과 달라야 함 (교정된 식을 쓰는 근거)
    s = build_scenario(0.8, 10.0)
    x = representative_points(s)[0]
    printed_gap = abs(printed_forms.outage_given_success(s, x) - outage_given_success_quadrature(s, x))
    tally.expect("printed P_OS rejected by its integral", printed_gap > 1e-3, f"gap {printed_gap:.3e}")
    return tally.result()


def montecarlo_suite(level: Level, seed: int = DEFAULT_SEED) -> SuiteResult:
    tally = _Tally("montecarlo")
    spots = _FAST_MC_SPOTS if level == "fast" else OUTAGE_SPOTS
    for k, (alpha1, rate, snr_db) in enumerate(spots):
        s = build_scenario(alpha1, snr_db, rate=rate)
        cfg = McConfig(samples=_MC_SAMPLES[level], seed=seed + k)
        exact = outage_total(s)
        est = simulate_bpsk_outage(s, cfg)
        band = 3.0 * math.sqrt(exact * (1.0 - exact) / est.n) + 1e-12
        tally.expect(f"outage α1={alpha1} R={rate} {snr_db:g} dB", abs(est.mean - exact) <= band,
                     f"{est.mean:.5g} vs {exact:.5g} (band ±{band:.2g})")
        exact = ec_total_exact(s)
        est = simulate_bpsk_ec(s, cfg.model_copy(update={"seed": seed + 1000 + k}))
        tally.expect(f"capacity α1={alpha1} {snr_db:g} dB", est.within(exact),
                     f"{est.mean:.5g} ± {est.stderr:.2g} vs {exact:.5g}")
    return tally.result()


# ============================================
# Report
# ============================================

def _known_inconsistencies() -> List[KnownInconsistency]:
    s = build_scenario(0.8, 10.0)
    x = representative_points(s)[0]
    q = table_rails(s)[0]
    gaps: Dict[str, float] = {
        "success-outage-closed-form": abs(printed_forms.outage_given_success(s, x) - outage_given_success(s, x)),
        "qpsk-equal-rail-success": abs(printed_forms.equal_rail_success_prob(q.mu_i)
                                       - equal_rail_success_prob(q.mu_i)),
        "qpsk-psi-kernel": abs(printed_forms.psi_kernel(1.0, 1.0) - psi_kernel(1.0, 1.0)),
    }
    return [KnownInconsistency(**item, gap=gaps.get(item["id"]))
            for item in printed_forms.KNOWN_INCONSISTENCIES]


class ValidationService:
    """Runs the invariant suites for one level"""

    SUITES: Sequence[Tuple[str, Callable[[Level], SuiteResult]]] = (
        ("mixture", mixture_suite),
        ("normalization", normalization_suite),
        ("oracle", oracle_suite),
        ("montecarlo", montecarlo_suite),
    )

    def run(self, level: Level = "fast") -> ValidationReport:
        """
        Run every suite

        Args:
            level: "fast" (reduced grids and sample counts) or "full"

        Returns:
            ValidationReport; failures are report content, never exceptions
        """
        if level not in ("fast", "full"):
            raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
        logger.info("🔍 validation (%s)", level)
        suites = [suite(level) for _, suite in self.SUITES]
        report = ValidationReport(level=level, passed=all(r.passed for r in suites), suites=suites,
                                  known_inconsistencies=_known_inconsistencies())
        logger.info("%s validation %s", "✅" if report.passed else "❌", "passed" if report.passed else "failed")
        return report


# Global ValidationService instance (싱글톤 패턴)
_validation_service_instance: Optional[ValidationService] = None


def get_validation_service() -> ValidationService:
    """
    ValidationService 싱글톤 인스턴스 반환

    Returns:
        ValidationService 인스턴스
    """
    global _validation_service_instance

    if _validation_service_instance is None:
        _validation_service_instance = ValidationService()

    return _validation_service_instance

"""
Monte Carlo Service
중첩 → Rayleigh 페이딩 → AWGN → 경판정 SIC 링크 시뮬레이터

Samples are split into chunks; every chunk owns a SeedSequence child stream and
returns plain sums, and the merge walks the chunks in index order with
math.fsum. The result therefore does not depend on the worker count.
"""

import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from scipy import integrate

from config.settings import (
    DEFAULT_MC_BINS,
    DEFAULT_MC_CHUNK,
    DEFAULT_MC_SAMPLES,
    DEFAULT_MC_WORKERS,
    DEFAULT_SEED,
)
from services.errors import ConfigError, SupportMismatchError
from services.postsic_bpsk import (
    FADING_SPAN,
    NOISE_SPAN,
    PdfCurve,
    second_moment_w,
    second_moment_z,
)
from services.postsic_qpsk import QuadrantLevels
from services.scenario import ConstellationPoint, Scenario, bpsk_constellation

logger = logging.getLogger(__name__)


class McConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: int = Field(default=DEFAULT_MC_SAMPLES, ge=1000)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2 ** 64)
    chunk: int = Field(default=DEFAULT_MC_CHUNK, ge=1)
    bins: int = Field(default=DEFAULT_MC_BINS, ge=2)
    workers: int = Field(default=DEFAULT_MC_WORKERS, ge=1)
    manifest_path: Optional[str] = None

    @model_validator(mode="before")
    @classmethod
    def _default_chunk(cls, data: Any) -> Any:
        # chunk를 지정하지 않으면 samples에 맞춰 줄임
        if isinstance(data, dict) and data.get("chunk") is None:
            data = dict(data)
            data.pop("chunk", None)
            samples = data.get("samples", DEFAULT_MC_SAMPLES)
            data["chunk"] = min(DEFAULT_MC_CHUNK, samples)
        return data

    @model_validator(mode="after")
    def _chunk_fits(self) -> "McConfig":
        if self.chunk > self.samples:
            raise ValueError(f"chunk ({self.chunk}) must not exceed samples ({self.samples})")
        return self

    def chunk_sizes(self) -> List[int]:
        full, rest = divmod(self.samples, self.chunk)
        return [self.chunk] * full + ([rest] if rest else [])


def build_mc_config(**values: Any) -> McConfig:
    """
    McConfig from loose settings (CLI flags, request bodies)

    Raises:
        ConfigError naming the offending field; chunk/samples conflicts name "chunk"
    """
    try:
        return McConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        field = str(first["loc"][0]) if first["loc"] else "chunk"
        raise ConfigError(field, first["msg"])


class McEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    stderr: float = Field(ge=0.0)
    n: int

    def within(self, reference: float, k: float = 3.0) -> bool:
        """|mean − reference| ≤ k·stderr (an exact match passes when stderr is 0)"""
        return abs(self.mean - reference) <= k * self.stderr + 1e-12


@dataclass
class ConditionalHistogram:
    branch: str
    variable: str
    edges: np.ndarray
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def density(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros_like(self.widths)
        return self.counts / (self.total * self.widths)

    def to_csv(self) -> str:
        lines = [f"# branch={self.branch} variable={self.variable} total={self.total}",
                 "left,right,count,density"]
        for left, right, count, dens in zip(self.edges[:-1].tolist(), self.edges[1:].tolist(),
                                            self.counts.tolist(), self.density.tolist()):
            lines.append(f"{left!r},{right!r},{count},{dens!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BpskBranchEstimate:
    point: ConstellationPoint
    p_success: McEstimate
    m2_w: McEstimate
    m2_z: McEstimate
    success_count: int
    failure_count: int
    histograms: Dict[str, ConditionalHistogram]


class QpskSuccessEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    levels: QuadrantLevels
    p_success: McEstimate
    m2_w: McEstimate
    variance: McEstimate


# ============================================
# Estimators
# ============================================

def binomial_estimate(hits: int, n: int) -> McEstimate:
    p = hits / n
    return McEstimate(mean=p, stderr=math.sqrt(max(p * (1.0 - p), 0.0) / n), n=n)


def moment_estimate(total: float, total_sq: float, n: int) -> McEstimate:
    """Sample mean and std/√n from accumulated Σv and Σv²"""
    if n == 0:
        return McEstimate(mean=float("nan"), stderr=0.0, n=0)
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    return McEstimate(mean=mean, stderr=math.sqrt(var / n), n=n)


def draw_rayleigh(rng: np.random.Generator, omega: float, size: int) -> np.ndarray:
    """β = √(−Ω ln U) by inverse CDF, U ∈ (0, 1]"""
    u = 1.0 - rng.random(size)
    return np.sqrt(-omega * np.log(u))


def fading_edges(s: Scenario, bins: int) -> np.ndarray:
    return np.linspace(0.0, FADING_SPAN * math.sqrt(s.omega), bins + 1)


def noise_edges(s: Scenario, bins: int) -> np.ndarray:
    span = NOISE_SPAN * s.sigma_n
    return np.linspace(-span, span, bins + 1)


def _bin_counts(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    # 범위 밖 표본은 양 끝 bin에 넣어 총합 = 분기 표본 수 유지
    clipped = np.clip(values, edges[0], edges[-1])
    counts, _ = np.histogram(clipped, bins=edges)
    return counts.astype(np.int64)


def histogram_from_samples(values: np.ndarray, edges: np.ndarray,
                           branch: str, variable: str) -> ConditionalHistogram:
    return ConditionalHistogram(branch=branch, variable=variable, edges=np.asarray(edges, dtype=float),
                                counts=_bin_counts(np.asarray(values, dtype=float), edges))


def histogram_distance(h: ConditionalHistogram, analytic: PdfCurve) -> Tuple[float, float]:
    """
    Sup and L1 distance between an empirical histogram and the bin-averaged analytic density

    Args:
        h: empirical histogram
        analytic: curve whose grid covers the histogram edges

    Returns:
        (sup, l1)
    """
    lo, hi = float(analytic.grid[0]), float(analytic.grid[-1])
    slack = 1e-9 * max(1.0, abs(hi - lo))
    if h.edges[0] < lo - slack or h.edges[-1] > hi + slack:
        raise SupportMismatchError(
            f"histogram [{h.edges[0]:g}, {h.edges[-1]:g}] outside curve support [{lo:g}, {hi:g}]"
        )
    cdf = integrate.cumulative_trapezoid(analytic.density, analytic.grid, initial=0.0)
    averaged = np.diff(np.interp(h.edges, analytic.grid, cdf)) / h.widths
    gap = np.abs(h.density - averaged)
    return float(gap.max()), float(np.sum(gap * h.widths))


def sample_from_curve(curve: PdfCurve, n: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF sampling from a tabulated density"""
    cdf = integrate.cumulative_trapezoid(curve.density, curve.grid, initial=0.0)
    cdf /= cdf[-1]
    return np.interp(rng.random(n), cdf, curve.grid)


# ============================================
# Chunk kernels (pure: rng + parameters → sums)
# ============================================

def _bpsk_branch_chunk(rng: np.random.Generator, size: int, s: Scenario, x: ConstellationPoint,
                       edges: Dict[str, np.ndarray]) -> Dict[str, Any]:
    beta = draw_rayleigh(rng, s.omega, size)
    noise = rng.standard_normal(size) * s.sigma_n
    ok = x.orientation * (beta * x.value + noise) >= 0
    w, z = noise[ok], noise[~ok]
    return {
        "success": int(ok.sum()),
        "w2": float(np.sum(w ** 2)), "w4": float(np.sum(w ** 4)),
        "z2": float(np.sum(z ** 2)), "z4": float(np.sum(z ** 4)),
        "fading_success": _bin_counts(beta[ok], edges["fading"]),
        "fading_failure": _bin_counts(beta[~ok], edges["fading"]),
        "fading_unconditional": _bin_counts(beta, edges["fading"]),
        "noise_success": _bin_counts(w, edges["noise"]),
        "noise_failure": _bin_counts(z, edges["noise"]),
        "noise_unconditional": _bin_counts(noise, edges["noise"]),
    }


def _branch_sinr(s: Scenario, rng: np.random.Generator, size: int) -> np.ndarray:
    """Equiprobable symbol, branch classification and the branch SINR with analytic moments"""
    points = bpsk_constellation(s)
    values = np.array([p.value for p in points])
    m2_w = np.array([second_moment_w(s, p) for p in points])
    m2_z = np.array([second_moment_z(s, p) for p in points])

    idx = rng.integers(0, len(points), size)
    beta = draw_rayleigh(rng, s.omega, size)
    noise = rng.standard_normal(size) * s.sigma_n
    x = values[idx]
    ok = np.sign(x) * (beta * x + noise) >= 0
    b2 = beta * beta
    return np.where(ok, s.alpha2 * b2 / m2_w[idx], s.alpha2 * b2 / (4.0 * s.alpha1 * b2 + m2_z[idx]))


def _outage_chunk(rng: np.random.Generator, size: int, s: Scenario) -> Dict[str, Any]:
    return {"hits": int(np.count_nonzero(_branch_sinr(s, rng, size) < s.gamma_th))}


def _ec_chunk(rng: np.random.Generator, size: int, s: Scenario) -> Dict[str, Any]:
    rate = np.log2(1.0 + _branch_sinr(s, rng, size))
    return {"sum": float(np.sum(rate)), "sum_sq": float(np.sum(rate * rate))}


def _qpsk_chunk(rng: np.random.Generator, size: int, s: Scenario, q: QuadrantLevels) -> Dict[str, Any]:
    beta = draw_rayleigh(rng, s.omega, size)
    n_re = rng.standard_normal(size) * s.sigma_n
    n_im = rng.standard_normal(size) * s.sigma_n
    ok = (beta * q.lambda_i + n_re >= 0) & (beta * q.lambda_j + n_im >= 0)
    power = n_re[ok] ** 2 + n_im[ok] ** 2
    return {
        "success": int(ok.sum()),
        "re": float(np.sum(n_re[ok])), "im": float(np.sum(n_im[ok])),
        "p2": float(np.sum(power)), "p4": float(np.sum(power * power)),
    }


# ============================================
# Simulator
# ============================================

class MonteCarloSimulator:
    """Runs chunk kernels on a thread pool and merges them in chunk order"""

    def _run(self, operation: str, cfg: McConfig,
             kernel: Callable[[np.random.Generator, int], Dict[str, Any]]) -> List[Dict[str, Any]]:
        sizes = cfg.chunk_sizes()
        streams = np.random.SeedSequence(cfg.seed).spawn(len(sizes))
        started = time.perf_counter()

        def work(k: int) -> Dict[str, Any]:
            return kernel(np.random.default_rng(streams[k]), sizes[k])

        if cfg.workers == 1 or len(sizes) == 1:
            parts = [work(k) for k in range(len(sizes))]
        else:
            with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                parts = list(executor.map(work, range(len(sizes))))

        elapsed = time.perf_counter() - started
        logger.info("🎯 %s: %d samples in %d chunks (%.2fs)", operation, cfg.samples, len(sizes), elapsed)
        if cfg.manifest_path:
            self._append_manifest(cfg, operation, elapsed)
        return parts

    @staticmethod
    def _append_manifest(cfg: McConfig, operation: str, elapsed: float) -> None:
        record = {"operation": operation, "seed": cfg.seed, "samples": cfg.samples,
                  "chunk": cfg.chunk, "wall_time_s": round(elapsed, 6)}
        with open(cfg.manifest_path, "a", encoding="utf-8") as f:
            f.write(json.dumps(record, sort_keys=True) + "\n")

    @staticmethod
    def _fsum(parts: List[Dict[str, Any]], key: str) -> float:
        return math.fsum(p[key] for p in parts)

    def simulate_bpsk_branch_stats(self, s: Scenario, x: ConstellationPoint,
                                   cfg: McConfig) -> BpskBranchEstimate:
        edges = {"fading": fading_edges(s, cfg.bins), "noise": noise_edges(s, cfg.bins)}
        parts = self._run("bpsk-branch-stats", cfg,
                          lambda rng, size: _bpsk_branch_chunk(rng, size, s, x, edges))
        n = cfg.samples
        n_s = sum(p["success"] for p in parts)
        n_f = n - n_s

        histograms = {}
        for variable in ("fading", "noise"):
            for branch in ("success", "failure", "unconditional"):
                key = f"{variable}_{branch}"
                counts = np.sum([p[key] for p in parts], axis=0)
                histograms[key] = ConditionalHistogram(branch=branch, variable=variable,
                                                       edges=edges[variable], counts=counts)

        return BpskBranchEstimate(
            point=x,
            p_success=binomial_estimate(n_s, n),
            m2_w=moment_estimate(self._fsum(parts, "w2"), self._fsum(parts, "w4"), n_s),
            m2_z=moment_estimate(self._fsum(parts, "z2"), self._fsum(parts, "z4"), n_f),
            success_count=n_s,
            failure_count=n_f,
            histograms=histograms,
        )

    def simulate_bpsk_outage(self, s: Scenario, cfg: McConfig) -> McEstimate:
        parts = self._run("bpsk-outage", cfg, lambda rng, size: _outage_chunk(rng, size, s))
        return binomial_estimate(sum(p["hits"] for p in parts), cfg.samples)

    def simulate_bpsk_ec(self, s: Scenario, cfg: McConfig) -> McEstimate:
        parts = self._run("bpsk-ec", cfg, lambda rng, size: _ec_chunk(rng, size, s))
        return moment_estimate(self._fsum(parts, "sum"), self._fsum(parts, "sum_sq"), cfg.samples)

    def simulate_qpsk_success_stats(self, s: Scenario, q: QuadrantLevels,
                                    cfg: McConfig) -> QpskSuccessEstimate:
        """
        Success-branch complex noise statistics

        var[W] reuses the stderr of E[|W|²]; the mean correction is small next to it.
        """
        parts = self._run("qpsk-success-stats", cfg, lambda rng, size: _qpsk_chunk(rng, size, s, q))
        n_s = sum(p["success"] for p in parts)
        m2 = moment_estimate(self._fsum(parts, "p2"), self._fsum(parts, "p4"), n_s)
        if n_s:
            mean_re = self._fsum(parts, "re") / n_s
            mean_im = self._fsum(parts, "im") / n_s
            variance = McEstimate(mean=m2.mean - (mean_re ** 2 + mean_im ** 2), stderr=m2.stderr, n=n_s)
        else:
            variance = m2
        return QpskSuccessEstimate(levels=q, p_success=binomial_estimate(n_s, cfg.samples),
                                   m2_w=m2, variance=variance)


# Global MonteCarloSimulator instance (싱글톤 패턴)
_simulator_instance: Optional[MonteCarloSimulator] = None


def get_simulator() -> MonteCarloSimulator:
    """
    MonteCarloSimulator 싱글톤 인스턴스 반환

    Returns:
        MonteCarloSimulator 인스턴스
    """
    global _simulator_instance

    if _simulator_instance is None:
        _simulator_instance = MonteCarloSimulator()

    return _simulator_instance


def simulate_bpsk_branch_stats(s: Scenario, x: ConstellationPoint, cfg: McConfig) -> BpskBranchEstimate:
    return get_simulator().simulate_bpsk_branch_stats(s, x, cfg)


def simulate_bpsk_outage(s: Scenario, cfg: McConfig) -> McEstimate:
    return get_simulator().simulate_bpsk_outage(s, cfg)


def simulate_bpsk_ec(s: Scenario, cfg: McConfig) -> McEstimate:
    return get_simulator().simulate_bpsk_ec(s, cfg)


def simulate_qpsk_success_stats(s: Scenario, q: QuadrantLevels, cfg: McConfig) -> QpskSuccessEstimate:
    return get_simulator().simulate_qpsk_success_stats(s, q, cfg)

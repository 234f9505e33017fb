"""
Sweep Service
파라미터 스윕(SNR / α₁ / ζ), CSV 기록/파싱, PDF 곡선 덤프
"""

import csv
import io
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from config.settings import DEFAULT_MC_WORKERS
from services.capacity_service import ec_closed_form_approx, ec_total_exact, legacy_ec
from services.errors import ConfigError
from services.montecarlo_service import (
    McConfig,
    simulate_bpsk_branch_stats,
    simulate_bpsk_ec,
    simulate_bpsk_outage,
)
from services.outage_service import legacy_outage, legacy_zeta_upper_bound, outage_total
from services.postsic_bpsk import PdfCurve, curve_panel
from services.scenario import ConstellationPoint, LegacyModel, Scenario

logger = logging.getLogger(__name__)

AXES = ("snr", "alpha1", "zeta")
AXIS_COLUMN = {"snr": "snr_db", "alpha1": "alpha1", "zeta": "zeta"}
DEFAULT_GRIDS = {"snr": "0:2:40", "alpha1": "0.55:0.05:0.95"}
ZETA_POINTS = 21


@dataclass
class SweepRecord:
    """One grid point: the independent variable plus a fixed, ordered column set"""
    x: float
    columns: Dict[str, float] = field(default_factory=dict)


# ============================================
# Grids
# ============================================

def parse_grid(spec: str) -> List[float]:
    """
    "start:step:stop" → inclusive list of values

    Args:
        spec: three numbers separated by ':'; a single number is a one-point grid

    Returns:
        list of floats in increasing order
    """
    parts = spec.split(":")
    try:
        numbers = [float(p) for p in parts]
    except ValueError:
        raise ConfigError("grid", f"cannot parse {spec!r}")
    if len(numbers) == 1:
        return numbers
    if len(numbers) != 3:
        raise ConfigError("grid", f"expected start:step:stop, got {spec!r}")
    start, step, stop = numbers
    if step <= 0 or stop < start:
        raise ConfigError("grid", f"need step > 0 and stop >= start, got {spec!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def zeta_grid(s: Scenario, spec: Optional[str] = None) -> List[float]:
    """ζ grid whose last point is the bound α₂/(α₁γ_th)"""
    bound = legacy_zeta_upper_bound(s)
    if spec is None:
        return np.linspace(0.0, bound, ZETA_POINTS).tolist()
    values = [v for v in parse_grid(spec) if v < bound]
    return values + [bound]


def _scenario_at(base: Scenario, zeta: float, axis: str, value: float):
    if axis == "snr":
        return base.replace(snr_db=value), LegacyModel(zeta=zeta)
    if axis == "alpha1":
        return base.replace(alpha1=value), LegacyModel(zeta=zeta)
    if axis == "zeta":
        return base, LegacyModel(zeta=value)
    raise ConfigError("axis", f"must be one of {', '.join(AXES)}, got {axis!r}")


def _grid_for(base: Scenario, axis: str, grid: Optional[str]) -> List[float]:
    if axis not in AXES:
        raise ConfigError("axis", f"must be one of {', '.join(AXES)}, got {axis!r}")
    if axis == "zeta":
        return zeta_grid(base, grid)
    return parse_grid(grid or DEFAULT_GRIDS[axis])


def point_config(mc: McConfig, k: int) -> McConfig:
    # 격자점마다 독립된 시드 (seed + k)
    return mc.model_copy(update={"seed": mc.seed + k})


def _map_points(fn: Callable[[int, float], SweepRecord], grid: Sequence[float],
                workers: int) -> List[SweepRecord]:
    if workers <= 1:
        return [fn(k, v) for k, v in enumerate(grid)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda kv: fn(*kv), enumerate(grid)))


# ============================================
# Sweeps
# ============================================

def op_sweep(base: Scenario, zeta: float = 0.0, axis: str = "snr", grid: Optional[str] = None,
             mc: Optional[McConfig] = None, workers: int = DEFAULT_MC_WORKERS) -> List[SweepRecord]:
    """Outage sweep: po_exact, po_legacy and optionally po_mc, mc_stderr"""
    points = _grid_for(base, axis, grid)
    logger.info("🔍 outage sweep over %s: %d points", axis, len(points))

    def row(k: int, value: float) -> SweepRecord:
        s, m = _scenario_at(base, zeta, axis, value)
        columns = {"po_exact": outage_total(s), "po_legacy": legacy_outage(s, m)}
        if mc is not None:
            est = simulate_bpsk_outage(s, point_config(mc, k))
            columns.update(po_mc=est.mean, mc_stderr=est.stderr)
        return SweepRecord(x=value, columns=columns)

    # MC는 내부에서 이미 병렬이므로 격자점은 순차 처리
    return _map_points(row, points, 1 if mc is not None else workers)


def ec_sweep(base: Scenario, zeta: float = 0.0, axis: str = "snr", grid: Optional[str] = None,
             mc: Optional[McConfig] = None, workers: int = DEFAULT_MC_WORKERS) -> List[SweepRecord]:
    """Capacity sweep: the non-axis parameters, ec_exact, ec_approx, ec_legacy, optional MC"""
    points = _grid_for(base, axis, grid)
    logger.info("🔍 capacity sweep over %s: %d points", axis, len(points))

    def row(k: int, value: float) -> SweepRecord:
        s, m = _scenario_at(base, zeta, axis, value)
        params = {"snr_db": s.snr_db, "alpha1": s.alpha1, "zeta": m.zeta}
        columns = {key: v for key, v in params.items() if key != AXIS_COLUMN[axis]}
        columns.update(ec_exact=ec_total_exact(s), ec_approx=ec_closed_form_approx(s),
                       ec_legacy=legacy_ec(s, m))
        if mc is not None:
            est = simulate_bpsk_ec(s, point_config(mc, k))
            columns.update(ec_mc=est.mean, mc_stderr=est.stderr)
        return SweepRecord(x=value, columns=columns)

    return _map_points(row, points, 1 if mc is not None else workers)


# ============================================
# CSV
# ============================================

def records_to_csv(records: Sequence[SweepRecord], x_name: str) -> str:
    """Header row, ',' separator, repr() floats so parsing gives the same values back"""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if not records:
        writer.writerow([x_name])
        return out.getvalue()
    names = list(records[0].columns)
    writer.writerow([x_name] + names)
    for r in records:
        if list(r.columns) != names:
            raise ValueError("sweep records must share one column set")
        writer.writerow([repr(float(v)) for v in [r.x] + [r.columns[n] for n in names]])
    return out.getvalue()


def parse_records_csv(text: str) -> List[SweepRecord]:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and not row[0].startswith("#")]
    if not rows:
        return []
    header, records = rows[0], []
    for row in rows[1:]:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} cells, header has {len(header)}")
        cells = [float(c) for c in row]
        records.append(SweepRecord(x=cells[0], columns=dict(zip(header[1:], cells[1:]))))
    return records


def records_to_table(records: Sequence[SweepRecord], x_name: str) -> str:
    """Fixed-width text table"""
    if not records:
        return ""
    names = [x_name] + list(records[0].columns)
    width = max(12, max(len(n) for n in names) + 2)
    lines = ["".join(n.rjust(width) for n in names)]
    for r in records:
        values = [r.x] + [r.columns[n] for n in names[1:]]
        lines.append("".join(f"{v:{width}.6g}" for v in values))
    return "\n".join(lines) + "\n"


# ============================================
# PDF dump
# ============================================

def pdf_dump(s: Scenario, x: ConstellationPoint, out_dir: str,
             mc: Optional[McConfig] = None) -> List[str]:
    """
    Write the six analytic curves (and matching MC histograms when mc is given)

    Returns:
        written file paths, in a fixed order
    """
    os.makedirs(out_dir, exist_ok=True)
    panel = curve_panel(s, x)
    paths = []
    for name, curve in panel.items():
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", encoding="utf-8") as f:
            f.write(curve.to_csv())
        paths.append(path)

    if mc is not None:
        estimate = simulate_bpsk_branch_stats(s, x, mc)
        for name, hist in estimate.histograms.items():
            path = os.path.join(out_dir, f"{name}_mc.csv")
            with open(path, "w", encoding="utf-8") as f:
                f.write(hist.to_csv())
            paths.append(path)
    logger.info("✅ wrote %d pdf files to %s", len(paths), out_dir)
    return paths


def read_curve_csv(path: str) -> PdfCurve:
    """Read back a curve written by PdfCurve.to_csv"""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    meta = dict(item.split("=", 1) for item in lines[0].lstrip("# ").split())
    rows = np.array([[float(c) for c in line.split(",")] for line in lines[2:] if line])
    params = {k: float(v) for k, v in meta.items() if k not in ("branch", "variable")}
    return PdfCurve(grid=rows[:, 0], density=rows[:, 1], branch=meta["branch"],
                    variable=meta["variable"], params=params)


def check_curve_normalization(path: str, tol: float = 1e-6) -> bool:
    """Integral of a dumped curve equals 1 within tol"""
    curve = read_curve_csv(path)
    total = curve.integral()
    ok = abs(total - 1.0) <= tol
    logger.info("%s %s integrates to %.9f", "✅" if ok else "❌", path, total)
    return ok


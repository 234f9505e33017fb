"""
Numerics Service
Gaussian tail functions, exponential integral and quadrature used by every analytic formula

All functions are pure and accept numpy arrays where it makes sense.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.laguerre import laggauss
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy import special

from config.settings import LAGUERRE_ORDER, QUAD_TOL
from services.errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SQRT2 = math.sqrt(2.0)
LN2 = math.log(2.0)

# e^x·E1(x) switches from scipy.special.exp1 to a Laguerre sum above this point
_SCALED_E1_SWITCH = 50.0


# ============================================
# Quadrature rules
# ============================================

@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights pair. gauss-laguerre uses the e^{-t} weight convention."""
    nodes: np.ndarray
    weights: np.ndarray
    kind: str  # "gauss-laguerre" | "adaptive-interval"

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


class QuadratureResult(NamedTuple):
    value: float
    error: float
    method: str


@lru_cache(maxsize=16)
def gauss_laguerre_rule(order: int = LAGUERRE_ORDER) -> QuadratureRule:
    """n-point Gauss–Laguerre rule for ∫₀^∞ e^{-t} g(t) dt"""
    if order < 1:
        raise DomainError(f"quadrature order must be positive, got {order}")
    nodes, weights = laggauss(order)
    return QuadratureRule(nodes=nodes, weights=weights, kind="gauss-laguerre")


@lru_cache(maxsize=64)
def interval_rule(order: int, a: float, b: float) -> QuadratureRule:
    """Gauss–Legendre rule mapped to [a, b] (building block of tensor/piecewise rules)"""
    if not a < b:
        raise DomainError(f"interval requires a < b, got [{a}, {b}]")
    x, w = leggauss(order)
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=half * x + 0.5 * (a + b), weights=half * w, kind="adaptive-interval")


# ============================================
# Gaussian tail / error functions
# ============================================

def std_normal_cdf(x: ArrayLike) -> ArrayLike:
    """Φ(x)"""
    return special.ndtr(x)


def q_function(x: ArrayLike) -> ArrayLike:
    """Q(x) = 1 − Φ(x), through erfc so the right tail keeps its relative accuracy"""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / SQRT2)


def erf(x: ArrayLike) -> ArrayLike:
    return special.erf(x)


def erfc(x: ArrayLike) -> ArrayLike:
    """erfc(x) = 1 − erf(x) without cancellation for large x"""
    return special.erfc(x)


def chiani_q_approx(x: ArrayLike) -> ArrayLike:
    """Two-exponential upper bound of Q(x), valid on x ≥ 0 only"""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("Chiani approximation is defined for x >= 0 only")
    return np.exp(-arr ** 2 / 2.0) / 12.0 + np.exp(-2.0 * arr ** 2 / 3.0) / 4.0


# ============================================
# Exponential integral
# ============================================

def _require_positive(x: np.ndarray, name: str) -> None:
    if np.any(~(x > 0)):
        raise DomainError(f"{name} requires x > 0")


def exp_integral_e1(x: ArrayLike) -> ArrayLike:
    """E₁(x) = ∫_x^∞ e^{-t}/t dt for x > 0"""
    arr = np.asarray(x, dtype=float)
    _require_positive(arr, "E1")
    return special.exp1(arr)


def scaled_exp_integral_e1(x: ArrayLike) -> ArrayLike:
    """
    e^{x}·E₁(x) without overflow

    For large x the product equals ∫₀^∞ e^{-t}/(x+t) dt, which the
    Gauss–Laguerre rule resolves to machine precision.
    """
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    _require_positive(arr, "scaled E1")
    out = np.empty_like(arr)
    small = arr <= _SCALED_E1_SWITCH
    out[small] = np.exp(arr[small]) * special.exp1(arr[small])
    if np.any(~small):
        rule = gauss_laguerre_rule(LAGUERRE_ORDER)
        out[~small] = (rule.weights / (arr[~small, None] + rule.nodes)).sum(axis=1)
    if np.ndim(x) == 0:
        return float(out[0])
    return out


# ============================================
# Integration
# ============================================

def _quad(f: Callable[[float], float], a: float, b: float, tol: float,
          points: Optional[Iterable[float]] = None) -> QuadratureResult:
    kwargs = {"epsabs": tol, "epsrel": 0.0, "limit": 500, "full_output": 1}
    if points is not None and np.isfinite(a) and np.isfinite(b):
        inside = sorted({float(p) for p in points if a < p < b})
        if inside:
            kwargs["points"] = inside
    result = integrate.quad(f, a, b, **kwargs)
    value, error = float(result[0]), float(result[1])
    # full_output: 수렴하면 3-튜플, 실패하면 메시지가 덧붙음
    ier = 0 if len(result) == 3 else 1
    if ier and error > max(tol, 1e-12 * abs(value)):
        message = result[3] if len(result) > 3 else "quadrature did not converge"
        raise QuadratureError(
            f"quadrature on [{a}, {b}] reached error {error:.3e} > tol {tol:.1e}: {message}",
            error_estimate=error,
        )
    return QuadratureResult(value, error, "adaptive")


def integrate_adaptive(f: Callable[[float], float], a: float, b: float,
                       tol: float = QUAD_TOL,
                       points: Optional[Sequence[float]] = None) -> QuadratureResult:
    """
    Adaptive subdivision quadrature on [a, b]

    Args:
        f: integrand, finite on [a, b]
        a, b: interval ends, a < b
        tol: absolute error target
        points: optional interior break points (kinks, truncation boundaries)

    Returns:
        QuadratureResult(value, error, "adaptive")
    """
    if not a < b:
        raise DomainError(f"integrate_adaptive requires a < b, got [{a}, {b}]")
    return _quad(f, a, b, tol, points)


def integrate_semi_infinite(f: Callable[[ArrayLike], ArrayLike], tol: float = QUAD_TOL,
                            order: int = LAGUERRE_ORDER) -> QuadratureResult:
    """
    ∫₀^∞ f(t) dt

    Gauss–Laguerre with e^{t} reweighting at `order` and `2·order`; when the two
    disagree by more than tol the adaptive QUADPACK rule on the transformed
    finite interval takes over.

    Args:
        f: vectorised integrand on (0, ∞), absolutely integrable
        tol: absolute error target
        order: base Gauss–Laguerre order

    Returns:
        QuadratureResult(value, error, method)
    """
    estimates = []
    with np.errstate(over="ignore", invalid="ignore"):
        for n in (order, 2 * order):
            rule = gauss_laguerre_rule(n)
            fv = np.asarray(f(rule.nodes), dtype=float)
            g = np.where(fv == 0.0, 0.0, fv * np.exp(rule.nodes))
            estimates.append(float(np.dot(rule.weights, g)))
    coarse, fine = estimates
    if np.isfinite(coarse) and np.isfinite(fine) and abs(fine - coarse) <= tol:
        return QuadratureResult(fine, abs(fine - coarse), "gauss-laguerre")

    logger.debug("Gauss–Laguerre orders disagree (%s vs %s), adaptive fallback", coarse, fine)
    result = _quad(lambda t: float(f(t)), 0.0, np.inf, tol)
    return QuadratureResult(result.value, result.error, "adaptive-semi-infinite")


def integrate_2d(f: Callable[[float, float], float],
                 x_range: Tuple[float, float],
                 y_range: Union[Tuple[float, float], Callable[[float], Tuple[float, float]]],
                 tol: float = 1e-8,
                 x_points: Optional[Sequence[float]] = None,
                 y_points: Optional[Callable[[float], Sequence[float]]] = None) -> QuadratureResult:
    """
    Iterated adaptive quadrature ∫∫ f(x, y) dy dx

    y_range may depend on x; y_points(x) gives inner break points.
    """
    def inner(x: float) -> float:
        lo, hi = y_range(x) if callable(y_range) else y_range
        if not lo < hi:
            return 0.0
        pts = y_points(x) if y_points is not None else None
        return _quad(lambda y: f(x, y), lo, hi, tol, pts).value

    return _quad(inner, x_range[0], x_range[1], tol, x_points)

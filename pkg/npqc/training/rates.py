"""
自適應學習率

保真度近似為 K_0 exp(-¼ Δθᵀ F Δθ)。先以 α_1 探測一步取得 K_1，
再由兩個保真度的比值解出修正後的學習率 α_t。
"""

import logging
from typing import Tuple, Union

import numpy as np

from ..exceptions import NPQCConvergedError, NPQCDomainError, NPQCStationaryPointError
from ..geometry import QfimMatrix


logger = logging.getLogger(__name__)

STATIONARY_THRESHOLD = 1e-12
CONVERGED_THRESHOLD = 1e-12

MetricLike = Union[QfimMatrix, np.ndarray, None]


def _metric_norm_sq(gradient: np.ndarray, metric: MetricLike) -> float:
    """∇Kᵀ F ∇K；metric 省略時為 |∇K|²"""
    if metric is None:
        return float(gradient @ gradient)
    entries = metric.entries if isinstance(metric, QfimMatrix) else np.asarray(metric, dtype=np.float64)
    return float(gradient @ entries @ gradient)


def _check_inputs(value: float, gradient: np.ndarray, k0: float) -> None:
    if not 0.0 < k0 <= 1.0:
        raise NPQCDomainError(f"k0 must be in (0, 1], got {k0}", details={"k0": k0})
    if value <= 0.0:
        raise NPQCDomainError(f"Fidelity must be positive, got {value}", details={"fidelity": value})
    if value >= k0 or -np.log(value / k0) < CONVERGED_THRESHOLD:
        raise NPQCConvergedError(
            f"Fidelity {value:.15f} already at maximum {k0}", fidelity=value
        )
    norm = float(np.linalg.norm(gradient))
    if norm < STATIONARY_THRESHOLD:
        raise NPQCStationaryPointError(
            f"Gradient norm {norm:.3e} below {STATIONARY_THRESHOLD}", grad_norm=norm
        )


def probe_rate(
    value: float,
    gradient,
    metric: MetricLike = None,
    k0: float = 1.0,
) -> float:
    """α_1 = 2 sqrt(-log(K/K_0)) / sqrt(∇Kᵀ F ∇K)"""
    gradient = np.asarray(gradient, dtype=np.float64).reshape(-1)
    _check_inputs(value, gradient, k0)
    curvature = _metric_norm_sq(gradient, metric)
    if curvature <= 0.0:
        raise NPQCStationaryPointError(
            f"Gradient lies in the kernel of the metric (∇Kᵀ F ∇K = {curvature:.3e})",
            grad_norm=float(np.linalg.norm(gradient))
        )
    return 2.0 * np.sqrt(-np.log(value / k0)) / np.sqrt(curvature)


def adaptive_rates(
    value: float,
    probe_value: float,
    gradient,
    metric: MetricLike = None,
    k0: float = 1.0,
) -> Tuple[float, float]:
    """回傳 (α_1, α_t)

    α_t = (2 / (α_1 ∇Kᵀ F ∇K)) log(K_1/K) + α_1/2，K_0 在比值中相消。
    """
    gradient = np.asarray(gradient, dtype=np.float64).reshape(-1)
    alpha_1 = probe_rate(value, gradient, metric, k0)
    if probe_value <= 0.0:
        raise NPQCDomainError(
            f"Probe fidelity must be positive, got {probe_value}",
            details={"probe_fidelity": probe_value}
        )
    curvature = _metric_norm_sq(gradient, metric)
    alpha_t = 2.0 / (alpha_1 * curvature) * np.log(probe_value / value) + alpha_1 / 2.0
    logger.debug(f"Adaptive rates: alpha_1={alpha_1:.6g}, alpha_t={alpha_t:.6g}")
    return float(alpha_1), float(alpha_t)

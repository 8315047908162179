"""
保真度與梯度變異數的高斯模型

NPQC 在 θ_r 附近的保真度近似為 exp(-¼ Δθᵀ F Δθ)，遠離時趨近 Haar 下限 2^-N。
"""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from ..circuit import NpqcSpec, prepare_state, random_direction, reference_params
from ..exceptions import NPQCArgumentError, NPQCDomainError
from ..parallel import map_ordered
from ..statevec import fidelity
from .gradients import fidelity_and_gradient
from .types import GradientVarianceReport, LandscapePoint, QfimMatrix


logger = logging.getLogger(__name__)

MetricLike = Union[QfimMatrix, np.ndarray, None]


def _metric_entries(metric: MetricLike, size: int) -> np.ndarray:
    if metric is None:
        return np.eye(size)
    entries = metric.entries if isinstance(metric, QfimMatrix) else np.asarray(metric, dtype=np.float64)
    if entries.shape != (size, size):
        raise NPQCArgumentError(
            f"Metric shape {entries.shape} does not match vector length {size}", argument="metric"
        )
    return entries


def haar_floor(n_qubits: int) -> float:
    """兩個獨立 Haar 隨機態的期望保真度"""
    return 2.0 ** -n_qubits


def gaussian_fidelity(delta: Sequence[float], metric: MetricLike = None) -> float:
    """exp(-¼ Δθᵀ F Δθ)；metric 省略時 F = I"""
    delta = np.asarray(delta, dtype=np.float64).reshape(-1)
    entries = _metric_entries(metric, delta.shape[0])
    return float(np.exp(-0.25 * delta @ entries @ delta))


def predicted_gradient_variance(
    fidelity_t: float,
    k0: float,
    metric: MetricLike,
    n_params: int,
) -> float:
    """(1/M) (Tr F² / Tr F) K_t² log(K_0/K_t)"""
    if not 0.0 < fidelity_t <= k0 <= 1.0:
        raise NPQCDomainError(
            f"Require 0 < K_t <= K_0 <= 1, got K_t={fidelity_t}, K_0={k0}",
            details={"fidelity_t": fidelity_t, "k0": k0}
        )
    entries = _metric_entries(metric, n_params)
    trace = float(np.trace(entries))
    ratio = float(np.trace(entries @ entries)) / trace if trace > 0 else 0.0
    return ratio * fidelity_t ** 2 * np.log(k0 / fidelity_t) / n_params


def fidelity_landscape(
    spec: NpqcSpec,
    distances: Sequence[float],
    instances: int,
    seed: int,
    threads: Optional[int] = None,
) -> List[LandscapePoint]:
    """沿隨機方向測量真實保真度，並與高斯模型及 Haar 下限比較

    每個 instance 固定一個方向，所有距離共用。
    """
    theta_r = reference_params(spec)
    reference = prepare_state(spec, theta_r)
    floor = haar_floor(spec.n_qubits)
    tasks = [(instance, float(d)) for instance in range(instances) for d in distances]

    def run(task):
        instance, distance = task
        direction = random_direction(spec.num_params, seed, instance)
        state = prepare_state(spec, theta_r.values + distance * direction)
        return LandscapePoint(
            distance=distance,
            instance=instance,
            fidelity=fidelity(reference, state),
            gaussian=float(np.exp(-distance ** 2 / 4)),
            haar_floor=floor,
        )

    points = map_ordered(run, tasks, threads)
    logger.info(f"Fidelity landscape: {len(points)} points for N={spec.n_qubits}, p={spec.n_layers}")
    return points


def gradient_variance_study(
    spec: NpqcSpec,
    distance: float,
    samples: int,
    seed: int,
    k0: float = 1.0,
    threads: Optional[int] = None,
) -> GradientVarianceReport:
    """在 θ_r 計算 ∂_k K_t 的變異數，目標態位於距離 |Δθ_{r,t}| 的隨機方向"""
    if samples < 2:
        raise NPQCArgumentError(f"samples must be >= 2, got {samples}", argument="samples")
    theta_r = reference_params(spec)

    def run(sample: int):
        direction = random_direction(spec.num_params, seed, sample)
        target = prepare_state(spec, theta_r.values + distance * direction)
        return fidelity_and_gradient(spec, theta_r, target)

    results = map_ordered(run, range(samples), threads)
    fidelities = np.array([value for value, _ in results])
    pooled = np.concatenate([gradient for _, gradient in results])
    mean_fidelity = float(np.mean(fidelities))
    predicted = predicted_gradient_variance(
        min(mean_fidelity, k0), k0, None, spec.num_params
    )
    report = GradientVarianceReport(
        distance=float(distance),
        samples=samples,
        n_params=spec.num_params,
        mean_fidelity=mean_fidelity,
        empirical_variance=float(np.var(pooled)),
        predicted_variance=float(predicted),
    )
    logger.info(
        f"Gradient variance at |Δθ|={distance:.3f}: empirical={report.empirical_variance:.3e}, "
        f"predicted={report.predicted_variance:.3e}"
    )
    return report

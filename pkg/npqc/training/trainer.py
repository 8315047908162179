"""
VQA 狀態學習

以梯度上升最大化 K_t(θ) = |<ψ_t|ψ(θ)>|^2，更新規則 θ' = θ + α ∇K_t(θ)。
"""

import logging
import time
from typing import Optional, Sequence, Tuple

import numpy as np

from ..circuit import NpqcSpec, ParamVector
from ..exceptions import NPQCConvergedError, NPQCDomainError, NPQCStationaryPointError
from ..geometry import circuit_fidelity, fidelity_and_gradient, qfim
from ..statevec import GateOp, StateVector
from .rates import CONVERGED_THRESHOLD, STATIONARY_THRESHOLD, adaptive_rates, probe_rate
from .types import (
    AdamState,
    OptimizerConfig,
    OptimizerMethod,
    StepOutcome,
    StopReason,
    TrainRecord,
    TrainTrace,
)


logger = logging.getLogger(__name__)


def adaptive_step(
    spec: NpqcSpec,
    theta: np.ndarray,
    target: StateVector,
    value: float,
    gradient: np.ndarray,
    use_qfim: bool = False,
    ridge: float = 0.0,
    k0: float = 1.0,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> Tuple[float, float, float]:
    """探測步與修正步，回傳 (α_1, K_1, α_t)"""
    metric = qfim(spec, theta, v_ref) if use_qfim else None
    if metric is not None and ridge > 0:
        metric = metric.entries + ridge * np.eye(metric.size)
    alpha_1 = probe_rate(value, gradient, metric, k0)
    probe_value = circuit_fidelity(spec, theta + alpha_1 * gradient, target, v_ref)
    _, alpha_t = adaptive_rates(value, probe_value, gradient, metric, k0)
    return alpha_1, probe_value, alpha_t


def single_adaptive_step(
    spec: NpqcSpec,
    theta,
    target: StateVector,
    use_qfim: bool = False,
    k0: float = 1.0,
    scale: float = 1.0,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> StepOutcome:
    """從 θ 出發執行一次自適應梯度上升 (學習率 scale·α_t)"""
    theta = theta.values if isinstance(theta, ParamVector) else np.asarray(theta, dtype=np.float64)
    value, gradient = fidelity_and_gradient(spec, theta, target, v_ref)
    try:
        alpha_1, _, alpha_t = adaptive_step(
            spec, theta, target, value, gradient, use_qfim=use_qfim, k0=k0, v_ref=v_ref
        )
    except (NPQCConvergedError, NPQCStationaryPointError) as e:
        logger.debug(f"No adaptive step taken: {e}")
        return StepOutcome(value, value, None, None)
    after = circuit_fidelity(spec, theta + scale * alpha_t * gradient, target, v_ref)
    return StepOutcome(value, after, alpha_1, scale * alpha_t)


def train(
    spec: NpqcSpec,
    theta0: ParamVector,
    target: StateVector,
    config: Optional[OptimizerConfig] = None,
    seed: int = 0,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> TrainTrace:
    """執行配置的最佳化器，直到 max_iters 或達到目標不保真度"""
    config = config or OptimizerConfig()
    theta = (theta0.values if isinstance(theta0, ParamVector) else np.asarray(theta0)).astype(np.float64)
    theta = theta.copy()
    adam = AdamState.zeros(theta.shape[0]) if config.method is OptimizerMethod.ADAM else None

    records = []
    evaluations = 0
    stop = StopReason.MAX_ITERS
    started = time.perf_counter()

    def record(iteration: int, value: float, norm: float, rate: Optional[float]) -> None:
        records.append(TrainRecord(
            iteration=iteration,
            fidelity=value,
            grad_norm=norm,
            rate=rate,
            method=config.method,
            seed=seed,
            wall_time=time.perf_counter() - started,
        ))

    for iteration in range(config.max_iters + 1):
        value, gradient = fidelity_and_gradient(spec, theta, target, v_ref)
        evaluations += 1
        norm = float(np.linalg.norm(gradient))

        if config.target_infidelity is not None and 1.0 - value <= config.target_infidelity:
            stop = StopReason.TARGET_REACHED
        elif 1.0 - value < CONVERGED_THRESHOLD:
            stop = StopReason.CONVERGED
        elif norm < STATIONARY_THRESHOLD:
            stop = StopReason.STATIONARY
        elif iteration == config.max_iters:
            stop = StopReason.MAX_ITERS
        else:
            stop = None
        if stop is not None:
            record(iteration, value, norm, None)
            break

        rate = config.rate_for(iteration)
        if config.method is OptimizerMethod.ADAM:
            step = adam.step(gradient, config)
        elif rate is not None:
            step = rate * gradient
        else:
            try:
                _, _, rate = adaptive_step(
                    spec, theta, target, value, gradient,
                    use_qfim=config.use_qfim, ridge=config.ridge, k0=config.k0, v_ref=v_ref,
                )
                evaluations += 1
            except NPQCConvergedError:
                stop = StopReason.CONVERGED
                record(iteration, value, norm, None)
                break
            except (NPQCStationaryPointError, NPQCDomainError) as e:
                logger.warning(
                    f"Adaptive step failed at iteration {iteration} ({e}); using {config.post_adaptive_rate}"
                )
                rate = config.post_adaptive_rate
            if rate <= 0:
                logger.warning(
                    f"Non-positive adaptive rate {rate:.3e} at iteration {iteration}; "
                    f"using {config.post_adaptive_rate}"
                )
                rate = config.post_adaptive_rate
            step = rate * gradient

        record(iteration, value, norm, rate)
        logger.debug(f"iter={iteration} K={value:.12f} |grad|={norm:.3e} rate={rate}")
        theta = theta + step

    logger.info(
        f"Training ({config.method.value}) finished after {len(records) - 1} steps: "
        f"K={records[-1].fidelity:.6f}, stop={stop.value}"
    )
    return TrainTrace(
        records=records,
        final_params=ParamVector(spec, theta),
        method=config.method,
        seed=seed,
        stop_reason=stop,
        fidelity_evaluations=evaluations,
    )

"""
訓練實驗

目標態建構、單步掃描與 (c, ν) 擬合、學習率掃描，以及跨層數或量子位元數的單步比較。
每個實例使用 (seed, instance, 用途) 推導出的獨立亂數流。
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..circuit import NpqcSpec, ParamVector, prepare_state, random_direction, random_params, reference_params
from ..exceptions import (
    NPQCArgumentError,
    NPQCConvergedError,
    NPQCInfeasibleError,
    NPQCStationaryPointError,
)
from ..geometry import circuit_fidelity, fidelity_and_gradient, haar_floor
from ..parallel import map_ordered
from ..statevec import StateVector, fidelity
from .trainer import adaptive_step, single_adaptive_step
from .types import InitMode, LearningRatePoint, ScanPoint, ScanResult, StepOutcome


logger = logging.getLogger(__name__)

TARGET_STREAM = 1
INIT_STREAM = 2

BISECTION_TOLERANCE = 1e-4
MAX_BRACKET_EXPANSIONS = 60
MAX_BISECTIONS = 200


def initial_params(spec: NpqcSpec, init: InitMode, seed: int, instance: int = 0) -> ParamVector:
    init = InitMode(init)
    if init is InitMode.REFERENCE:
        return reference_params(spec)
    return random_params(spec, seed, instance, INIT_STREAM)


def target_from_distance(
    spec: NpqcSpec,
    distance: Optional[float] = None,
    seed: int = 0,
    k_target: Optional[float] = None,
    origin: Optional[ParamVector] = None,
    instance: int = 0,
    tolerance: float = BISECTION_TOLERANCE,
) -> Tuple[ParamVector, StateVector]:
    """沿隨機方向 u 建構目標 θ_t = θ_origin + |Δθ| u

    指定 k_target 時，以 |Δθ| = 2 sqrt(-log K) 為起點擴張夾擠區間，
    再以真實保真度二分搜尋至 |K - K_target| <= tolerance。
    """
    origin = origin if origin is not None else reference_params(spec)
    direction = random_direction(spec.num_params, seed, instance, TARGET_STREAM)

    if k_target is None:
        if distance is None:
            raise NPQCArgumentError("Either distance or k_target is required", argument="distance")
        theta_t = origin.shifted(float(distance) * direction)
        return theta_t, prepare_state(spec, theta_t)

    floor = haar_floor(spec.n_qubits)
    if not floor < k_target <= 1.0:
        raise NPQCInfeasibleError(
            f"Target fidelity {k_target} outside ({floor:.3e}, 1]",
            details={"k_target": k_target, "haar_floor": floor}
        )
    if k_target == 1.0:
        return origin, prepare_state(spec, origin)

    reference = prepare_state(spec, origin)

    def fidelity_at(d: float) -> float:
        return fidelity(reference, prepare_state(spec, origin.values + d * direction))

    low, high = 0.0, 2.0 * np.sqrt(-np.log(k_target))
    value = fidelity_at(high)
    expansions = 0
    while value > k_target:
        if abs(value - k_target) <= tolerance:
            return origin.shifted(high * direction), prepare_state(spec, origin.values + high * direction)
        if expansions >= MAX_BRACKET_EXPANSIONS:
            raise NPQCInfeasibleError(
                f"No distance along the sampled direction reaches K={k_target}",
                details={"k_target": k_target, "seed": seed, "instance": instance}
            )
        low, high = high, high * 1.5
        value = fidelity_at(high)
        expansions += 1

    mid = high
    for _ in range(MAX_BISECTIONS):
        if abs(value - k_target) <= tolerance:
            break
        mid = 0.5 * (low + high)
        value = fidelity_at(mid)
        if value > k_target:
            low = mid
        else:
            high = mid
    else:
        raise NPQCInfeasibleError(
            f"Bisection did not reach K={k_target} within {tolerance}",
            details={"k_target": k_target, "achieved": value}
        )

    theta_t = origin.shifted(mid * direction)
    logger.debug(f"Target at |Δθ|={mid:.6f} with K={value:.6f} (requested {k_target})")
    return theta_t, prepare_state(spec, theta_t)


def _step_instance(
    spec: NpqcSpec,
    infidelity: float,
    init: InitMode,
    seed: int,
    instance: int,
    use_qfim: bool,
    scales: Sequence[float] = (1.0,),
) -> List[StepOutcome]:
    origin = initial_params(spec, init, seed, instance)
    _, target = target_from_distance(
        spec, seed=seed, k_target=1.0 - infidelity, origin=origin, instance=instance
    )
    if len(scales) == 1:
        return [single_adaptive_step(spec, origin, target, use_qfim=use_qfim, scale=scales[0])]

    value, gradient = fidelity_and_gradient(spec, origin, target)
    try:
        alpha_1, _, alpha_t = adaptive_step(spec, origin.values, target, value, gradient, use_qfim=use_qfim)
    except (NPQCConvergedError, NPQCStationaryPointError):
        return [StepOutcome(value, value, None, None) for _ in scales]
    return [
        StepOutcome(
            value,
            circuit_fidelity(spec, origin.values + scale * alpha_t * gradient, target),
            alpha_1,
            scale * alpha_t,
        )
        for scale in scales
    ]


def fit_scaling(
    infidelities_before: Sequence[float],
    infidelities_after: Sequence[float],
) -> Tuple[float, float]:
    """以 log-log 最小平方擬合 ΔK_after = c (-log(1 - ΔK_before))^ν，回傳 (c, ν)"""
    before = np.asarray(infidelities_before, dtype=np.float64)
    after = np.asarray(infidelities_after, dtype=np.float64)
    mask = (after > 10 * np.finfo(np.float64).eps) & (before > 0) & (before < 1)
    if np.count_nonzero(mask) < 2:
        raise NPQCArgumentError(
            f"Need at least two usable points to fit, got {np.count_nonzero(mask)}",
            argument="infidelities"
        )
    x = np.log(-np.log1p(-before[mask]))
    y = np.log(after[mask])
    nu, log_c = np.polyfit(x, y, 1)
    return float(np.exp(log_c)), float(nu)


def single_step_scan(
    spec: NpqcSpec,
    infidelities: Sequence[float],
    init: InitMode = InitMode.REFERENCE,
    instances: int = 50,
    seed: int = 0,
    use_qfim: bool = False,
    threads: Optional[int] = None,
) -> ScanResult:
    """每個初始不保真度執行 instances 次單步自適應上升並擬合 (c, ν)"""
    init = InitMode(init)
    tasks = [(dk, instance) for dk in infidelities for instance in range(instances)]
    outcomes = map_ordered(
        lambda task: _step_instance(spec, task[0], init, seed, task[1], use_qfim)[0],
        tasks,
        threads,
    )

    grouped: Dict[float, List[StepOutcome]] = {}
    for (dk, _), outcome in zip(tasks, outcomes):
        grouped.setdefault(dk, []).append(outcome)
    points = [_summarize(spec, dk, group) for dk, group in grouped.items()]

    result = ScanResult(init=init, points=points, outcomes=list(outcomes))
    try:
        result.c, result.nu = fit_scaling(
            [p.infidelity_before for p in points], [p.infidelity_after for p in points]
        )
    except NPQCArgumentError as e:
        logger.warning(f"Scaling fit skipped: {e}")
    logger.info(
        f"Single-step scan ({init.value}, N={spec.n_qubits}, p={spec.n_layers}): "
        f"c={result.c:.4g}, nu={result.nu:.4g}"
    )
    return result


def _summarize(spec: NpqcSpec, requested: float, group: Sequence[StepOutcome]) -> ScanPoint:
    after = np.array([o.infidelity_after for o in group])
    return ScanPoint(
        n_qubits=spec.n_qubits,
        n_layers=spec.n_layers,
        requested_infidelity=float(requested),
        infidelity_before=float(np.mean([o.infidelity_before for o in group])),
        infidelity_after=float(np.mean(after)),
        infidelity_after_std=float(np.std(after)),
        instances=len(group),
    )


def step_sweep(
    specs: Sequence[NpqcSpec],
    infidelity: float,
    init: InitMode = InitMode.REFERENCE,
    instances: int = 50,
    seed: int = 0,
    threads: Optional[int] = None,
) -> List[ScanPoint]:
    """固定初始不保真度，比較不同 (N, p) 的單步結果"""
    init = InitMode(init)
    points = []
    for spec in specs:
        outcomes = map_ordered(
            lambda instance: _step_instance(spec, infidelity, init, seed, instance, False)[0],
            range(instances),
            threads,
        )
        points.append(_summarize(spec, infidelity, outcomes))
        logger.info(
            f"Step sweep N={spec.n_qubits}, p={spec.n_layers}: "
            f"mean infidelity after {points[-1].infidelity_after:.4g}"
        )
    return points


def learning_rate_scan(
    spec: NpqcSpec,
    infidelities: Sequence[float],
    scales: Sequence[float],
    instances: int = 20,
    seed: int = 0,
    threads: Optional[int] = None,
) -> List[LearningRatePoint]:
    """從 θ_r 以 λ·α_t 走一步，λ 掃過 scales"""
    scales = [float(s) for s in scales]
    if not scales or min(scales) <= 0:
        raise NPQCArgumentError("scales must be non-empty and positive", argument="scales")
    tasks = [(dk, instance) for dk in infidelities for instance in range(instances)]
    results = map_ordered(
        lambda task: _step_instance(spec, task[0], InitMode.REFERENCE, seed, task[1], False, scales),
        tasks,
        threads,
    )

    points = []
    for dk in infidelities:
        rows = [outcomes for (task_dk, _), outcomes in zip(tasks, results) if task_dk == dk]
        for j, scale in enumerate(scales):
            after = np.array([outcomes[j].infidelity_after for outcomes in rows])
            points.append(LearningRatePoint(
                requested_infidelity=float(dk),
                scale=scale,
                infidelity_after=float(np.mean(after)),
                infidelity_after_std=float(np.std(after)),
                instances=len(rows),
            ))
    logger.info(f"Learning-rate scan: {len(points)} points over {len(scales)} scales")
    return points

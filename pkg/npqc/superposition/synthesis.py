"""
疊加態合成

假設 F = I，保真度與參數距離滿足 |Δθ_{r,s}|² = -4 log K_rs。給定 K_ts 後
Δθ_{r,s} 與 Δθ_{r,t} 的夾角 φ 由

    cos φ = (4 log(K_ts/K_rs) + |Δθ_{r,t}|²) / (4 |Δθ_{r,t}| sqrt(-log K_rs))

決定；|cos φ| <= 1 時有解。垂直分量方向 ê_⊥ 只影響模型誤差。
"""

import dataclasses
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..circuit import NpqcSpec, prepare_state, reference_params
from ..exceptions import (
    NPQCArgumentError,
    NPQCDegenerateTargetError,
    NPQCDomainError,
)
from ..geometry import haar_floor
from ..parallel import map_ordered
from ..statevec import fidelity, make_rng
from ..training import target_from_distance
from .types import SuperposeRecord, SuperposeRequest, SuperposeResult


logger = logging.getLogger(__name__)

COS_TOLERANCE = 1e-12
K_RT_RTOL = 1e-9
ORTHOGONAL_STREAM = 5
SWEEP_STREAM = 6
ORTHOGONAL_MODES = ("deterministic", "random")


def feasibility_bounds(k_rs: float, distance_rt: float) -> Tuple[float, float]:
    """K_rs exp(±|Δθ_{r,t}| sqrt(-log K_rs) - |Δθ_{r,t}|²/4)，上界截斷於 1"""
    if not 0.0 < k_rs <= 1.0:
        raise NPQCArgumentError(f"k_rs must be in (0, 1], got {k_rs}", argument="k_rs")
    if distance_rt < 0:
        raise NPQCArgumentError(f"distance must be non-negative, got {distance_rt}", argument="distance_rt")
    spread = distance_rt * np.sqrt(-np.log(k_rs))
    base = -0.25 * distance_rt ** 2
    low = k_rs * np.exp(base - spread)
    high = k_rs * np.exp(base + spread)
    return float(low), float(min(high, 1.0))


def superposition_cosine(k_rs: float, k_ts: float, distance_rt: float) -> float:
    """cos φ；K_rs = 1 或距離為 0 時無定義"""
    return float(
        (4.0 * np.log(k_ts / k_rs) + distance_rt ** 2)
        / (4.0 * distance_rt * np.sqrt(-np.log(k_rs)))
    )


def orthogonal_direction(
    parallel: np.ndarray,
    mode: str = "deterministic",
    seed: int = 0,
) -> np.ndarray:
    """與 ê_∥ 正交的單位向量

    deterministic：取與 ê_∥ 最不對齊的標準基底向量，投影一次後正規化。
    random：以 seed 抽樣高斯向量後投影。
    """
    if mode == "deterministic":
        candidate = np.zeros_like(parallel)
        candidate[int(np.argmin(np.abs(parallel)))] = 1.0
    elif mode == "random":
        candidate = make_rng(seed, ORTHOGONAL_STREAM).standard_normal(parallel.shape[0])
    else:
        raise NPQCArgumentError(
            f"orthogonal mode must be one of {ORTHOGONAL_MODES}, got {mode!r}", argument="orthogonal"
        )
    candidate = candidate - (candidate @ parallel) * parallel
    norm = np.linalg.norm(candidate)
    if norm < 1e-12:
        raise NPQCArgumentError("No direction orthogonal to the target displacement", argument="parallel")
    return candidate / norm


def _check_floor(req: SuperposeRequest) -> None:
    floor = haar_floor(req.theta_r.spec.n_qubits)
    for name, value in (("k_rs", req.k_rs), ("k_ts", req.k_ts)):
        if value <= floor:
            raise NPQCDomainError(
                f"{name}={value} is at or below the Haar floor {floor:.3e}",
                details={name: value, "haar_floor": floor}
            )


def solve_superposition(
    req: SuperposeRequest,
    orthogonal: str = "deterministic",
    seed: int = 0,
) -> SuperposeResult:
    """解析求出 θ_s = θ_r + |Δθ_{r,s}| (cos φ ê_∥ + sin φ ê_⊥)

    K_rs = 1 時 θ_s = θ_r，只有 K_ts 等於 θ_r 與 θ_t 的實際保真度才可行；
    否則回傳 feasible = False 且 cos_angle 為 NaN。
    """
    _check_floor(req)
    theta_r = req.theta_r
    radius = 2.0 * np.sqrt(-np.log(req.k_rs))
    distance = req.distance

    if req.k_rs == 1.0:
        # θ_s = θ_r, so K_ts is fixed by the r-t fidelity
        spec = theta_r.spec
        k_rt = fidelity(prepare_state(spec, theta_r), prepare_state(spec, req.theta_t))
        if not np.isclose(req.k_ts, k_rt, rtol=K_RT_RTOL, atol=COS_TOLERANCE):
            logger.warning(f"K_rs=1 forces K_ts={k_rt:.12f}, requested {req.k_ts}")
            return SuperposeResult(theta_s=None, cos_angle=float("nan"), feasible=False)
        return SuperposeResult(theta_s=theta_r, cos_angle=1.0, feasible=True)

    if distance == 0.0:
        if not np.isclose(req.k_ts, req.k_rs, rtol=0.0, atol=COS_TOLERANCE):
            raise NPQCDegenerateTargetError(
                f"θ_t equals θ_r but K_ts={req.k_ts} differs from K_rs={req.k_rs}",
                details={"k_rs": req.k_rs, "k_ts": req.k_ts}
            )
        axis = np.zeros(len(theta_r))
        axis[0] = 1.0
        return SuperposeResult(theta_s=theta_r.shifted(radius * axis), cos_angle=1.0, feasible=True)

    cos_angle = superposition_cosine(req.k_rs, req.k_ts, distance)
    if abs(cos_angle) > 1.0 + COS_TOLERANCE:
        logger.warning(
            f"Infeasible superposition request K_rs={req.k_rs}, K_ts={req.k_ts} (cos={cos_angle:.6f})"
        )
        return SuperposeResult(theta_s=None, cos_angle=cos_angle, feasible=False)

    clipped = float(np.clip(cos_angle, -1.0, 1.0))
    parallel = req.displacement / distance
    perpendicular = orthogonal_direction(parallel, orthogonal, seed)
    step = radius * (clipped * parallel + np.sqrt(1.0 - clipped ** 2) * perpendicular)
    return SuperposeResult(theta_s=theta_r.shifted(step), cos_angle=cos_angle, feasible=True)


def gaussian_predicted_fidelities(req: SuperposeRequest, result: SuperposeResult) -> Tuple[float, float]:
    """高斯模型 (F = I) 在 θ_s 預測的 (K_rs, K_ts)"""
    if result.theta_s is None:
        raise NPQCArgumentError("Result is infeasible; no θ_s to evaluate", argument="result")
    to_r = result.theta_s.values - req.theta_r.values
    to_t = result.theta_s.values - req.theta_t.values
    return float(np.exp(-0.25 * to_r @ to_r)), float(np.exp(-0.25 * to_t @ to_t))


def superposition_error(spec: NpqcSpec, result: SuperposeResult, req: SuperposeRequest) -> float:
    """ΔC = |K_rs - K'_rs| + |K_ts - K'_ts|"""
    return evaluate_superposition(spec, result, req).delta_c


def evaluate_superposition(spec: NpqcSpec, result: SuperposeResult, req: SuperposeRequest) -> SuperposeResult:
    """在模擬器上量測實際保真度並填入 ΔC"""
    if result.theta_s is None:
        raise NPQCArgumentError("Result is infeasible; no θ_s to evaluate", argument="result")
    state_s = prepare_state(spec, result.theta_s)
    realized_rs = fidelity(prepare_state(spec, req.theta_r), state_s)
    realized_ts = fidelity(prepare_state(spec, req.theta_t), state_s)
    delta_c = abs(req.k_rs - realized_rs) + abs(req.k_ts - realized_ts)
    return dataclasses.replace(
        result, realized_k_rs=realized_rs, realized_k_ts=realized_ts, delta_c=delta_c
    )


def superposition_sweep(
    spec: NpqcSpec,
    infidelity_rt: float,
    instances: int,
    seed: int,
    grid: Optional[Sequence[Tuple[float, float]]] = None,
    margin: float = 0.05,
    orthogonal: str = "deterministic",
    threads: Optional[int] = None,
) -> List[SuperposeRecord]:
    """對 ΔK_t(θ_r) = infidelity_rt 的隨機目標合成疊加態

    grid 為 None 時每個實例隨機抽一組 (K_rs, K_ts)：K_rs 在 (2·2^-N, 1) 均勻，
    K_ts 在可行區間內側 margin 比例處均勻；否則每個實例走過整個 grid。
    """
    if not 0 <= margin < 0.5:
        raise NPQCArgumentError(f"margin must be in [0, 0.5), got {margin}", argument="margin")
    floor = haar_floor(spec.n_qubits)
    theta_r = reference_params(spec)

    def run(instance: int) -> List[SuperposeRecord]:
        theta_t, _ = target_from_distance(
            spec, seed=seed, k_target=1.0 - infidelity_rt, instance=instance
        )
        distance = theta_r.distance(theta_t)
        if grid is not None:
            pairs = [(float(a), float(b)) for a, b in grid]
        else:
            rng = make_rng(seed, instance, SWEEP_STREAM)
            k_rs = float(rng.uniform(2 * floor, 1.0))
            low, high = feasibility_bounds(k_rs, distance)
            low = max(low, 2 * floor)
            width = max(high - low, 0.0)
            k_ts = float(rng.uniform(low + margin * width, high - margin * width))
            pairs = [(k_rs, k_ts)]

        records = []
        for k_rs, k_ts in pairs:
            req = SuperposeRequest(theta_r, theta_t, k_rs, k_ts)
            result = solve_superposition(req, orthogonal=orthogonal, seed=instance)
            if result.feasible:
                result = evaluate_superposition(spec, result, req)
            records.append(SuperposeRecord(
                instance=instance,
                k_rs=k_rs,
                k_ts=k_ts,
                cos_angle=result.cos_angle,
                feasible=result.feasible,
                delta_c=result.delta_c,
                n_params=spec.num_params,
                infidelity_rt=infidelity_rt,
                seed=seed,
            ))
        return records

    records = [r for batch in map_ordered(run, range(instances), threads) for r in batch]
    feasible = [r.delta_c for r in records if r.feasible]
    logger.info(
        f"Superposition sweep M={spec.num_params}, dK_rt={infidelity_rt}: "
        f"{len(feasible)}/{len(records)} feasible, mean delta_C="
        f"{(np.mean(feasible) if feasible else float('nan')):.4g}"
    )
    return records

"""
計算基底多參數感測

θ_r 附近 Y_ONLY 電路的狀態展開為 |0> + ½ Σ Δθ_i |v_i> + O(|Δθ|²)，
因此量測 v_i 的機率 P_i 給出 |Δθ_i| = 2 sqrt(P_i)。只能估計絕對值。
"""

import logging
from functools import lru_cache
from typing import Dict, Optional, Sequence, Union

import numpy as np

from ..circuit import NpqcSpec, Variant, prepare_y_state, reference_params
from ..exceptions import (
    NPQCArgumentError,
    NPQCCollisionError,
    NPQCProtocolViolationError,
    NPQCShapeError,
    NPQCVariantError,
)
from ..geometry import gradient_states
from ..parallel import map_ordered
from ..statevec import StateVector, make_rng, sample_basis
from .types import EXACT_SHOTS, BasisIndexMap, SenseReport, SenseStudy


logger = logging.getLogger(__name__)

CONCENTRATION_THRESHOLD = 0.999
AMPLITUDE_TOLERANCE = 1e-6

DELTA_STREAM = 3
SHOT_STREAM = 4
DIRECTIONS = ("random", "equal")


def _require_y_only(spec: NpqcSpec) -> None:
    if spec.variant is not Variant.Y_ONLY:
        raise NPQCVariantError(
            f"Sensing requires a Y_ONLY spec, got {spec.variant.value}",
            variant=spec.variant.value
        )


@lru_cache(maxsize=32)
def basis_index_map(spec: NpqcSpec) -> BasisIndexMap:
    """由 θ_r 的導數態求出 v_i，並檢查集中度、振幅與唯一性"""
    _require_y_only(spec)
    gradients = gradient_states(spec, reference_params(spec))
    indices = []
    for i, amplitudes in enumerate(gradients.derivatives):
        probabilities = np.abs(amplitudes) ** 2
        v = int(np.argmax(probabilities))
        concentration = probabilities[v] / probabilities.sum()
        if concentration < CONCENTRATION_THRESHOLD:
            raise NPQCProtocolViolationError(
                f"Gradient state of parameter {i} has only {concentration:.6f} weight on v_i",
                parameter_index=i
            )
        if abs(abs(amplitudes[v]) - 0.5) > AMPLITUDE_TOLERANCE:
            raise NPQCProtocolViolationError(
                f"Gradient amplitude of parameter {i} is {abs(amplitudes[v]):.9f}, expected 1/2",
                parameter_index=i
            )
        indices.append(v)

    if 0 in indices:
        raise NPQCCollisionError(
            "A parameter maps to the |0...0> basis state", indices=[i for i, v in enumerate(indices) if v == 0]
        )
    if len(set(indices)) != len(indices):
        seen: Dict[int, int] = {}
        duplicates = [i for i, v in enumerate(indices) if seen.setdefault(v, i) != i]
        raise NPQCCollisionError("Basis indices v_i are not distinct", indices=duplicates)

    logger.debug(f"Basis index map for N={spec.n_qubits}, p={spec.n_layers}: {indices}")
    return BasisIndexMap(spec, tuple(indices))


def encode(spec: NpqcSpec, delta: Sequence[float]) -> StateVector:
    """U_y^dagger(θ_r) U_y(θ_r + Δθ)|0>"""
    _require_y_only(spec)
    delta = np.asarray(delta, dtype=np.float64).reshape(-1)
    if delta.shape[0] != spec.num_params:
        raise NPQCShapeError(
            f"Expected {spec.num_params} parameter shifts, got {delta.shape[0]}",
            expected=spec.num_params,
            actual=delta.shape[0]
        )
    if np.any(np.abs(delta) >= np.pi):
        raise NPQCArgumentError("Parameter shifts must satisfy |Δθ_i| < π", argument="delta")
    return prepare_y_state(spec, reference_params(spec).values + delta)


def estimate(counts: Dict[int, int], index_map: BasisIndexMap, shots: int) -> np.ndarray:
    """|Δθ_i|' = 2 sqrt(count(v_i) / n)"""
    if shots < 1:
        raise NPQCArgumentError(f"shots must be >= 1, got {shots}", argument="shots")
    total = sum(counts.values())
    if total != shots:
        raise NPQCArgumentError(
            f"Counts sum to {total}, expected {shots}", argument="counts"
        )
    observed = np.array([counts.get(v, 0) for v in index_map], dtype=np.float64)
    return 2.0 * np.sqrt(observed / shots)


def estimate_exact(state: StateVector, index_map: BasisIndexMap) -> np.ndarray:
    """無限取樣極限：|Δθ_i|' = 2 sqrt(P_i)"""
    probabilities = state.probabilities()
    return 2.0 * np.sqrt(probabilities[index_map.as_array()])


def leakage_fraction(
    distribution: Union[Dict[int, int], StateVector],
    index_map: BasisIndexMap,
) -> float:
    """落在 {0} ∪ {v_i} 以外的比例 (計數或精確機率)"""
    support = index_map.support
    if isinstance(distribution, StateVector):
        probabilities = distribution.probabilities()
        inside = probabilities[0] + probabilities[index_map.as_array()].sum()
        return float(max(0.0, 1.0 - inside / probabilities.sum()))
    total = sum(distribution.values())
    if total == 0:
        return 0.0
    outside = sum(c for index, c in distribution.items() if index not in support)
    return outside / total


def sample_delta(
    n_params: int,
    norm: float,
    seed: int,
    instance: int,
    direction: str = "random",
) -> np.ndarray:
    """隨機方向 (球面均勻) 或等幅方向 (|Δθ_i| = |Δθ|/sqrt(M)、隨機正負號)"""
    rng = make_rng(seed, instance, DELTA_STREAM)
    if direction == "random":
        unit = rng.standard_normal(n_params)
        unit /= np.linalg.norm(unit)
    elif direction == "equal":
        unit = rng.choice([-1.0, 1.0], size=n_params) / np.sqrt(n_params)
    else:
        raise NPQCArgumentError(
            f"direction must be one of {DIRECTIONS}, got {direction!r}", argument="direction"
        )
    return norm * unit


def sense_experiment(
    spec: NpqcSpec,
    norms: Sequence[float],
    shots: Sequence[int],
    instances: int,
    seed: int,
    direction: str = "random",
    include_exact: bool = True,
    threads: Optional[int] = None,
) -> SenseStudy:
    """在 (|Δθ|, n) 網格上編碼、取樣並估計

    每個實例在所有 |Δθ| 上共用同一方向；shots = -1 的列使用精確機率。
    """
    _require_y_only(spec)
    if any(n < 0 for n in norms):
        raise NPQCArgumentError("Norms must be non-negative", argument="norms")
    if any(int(n) < 1 for n in shots):
        raise NPQCArgumentError("Shot budgets must be >= 1", argument="shots")
    index_map = basis_index_map(spec)
    shot_levels = [int(n) for n in shots]
    tasks = [(k, float(norm), instance) for k, norm in enumerate(norms) for instance in range(instances)]

    def run(task):
        norm_index, norm, instance = task
        delta = sample_delta(spec.num_params, norm, seed, instance, direction)
        state = encode(spec, delta)
        reports = []

        def report(n: int, estimate_vector: np.ndarray, leakage: float) -> SenseReport:
            return SenseReport(
                n_qubits=spec.n_qubits,
                n_layers=spec.n_layers,
                n_params=spec.num_params,
                norm=norm,
                shots=n,
                instance=instance,
                seed=seed,
                true_delta=delta,
                estimate=estimate_vector,
                leakage_fraction=leakage,
            )

        for shot_index, n in enumerate(shot_levels):
            counts = sample_basis(state, n, seed, instance, SHOT_STREAM, norm_index, shot_index)
            reports.append(report(n, estimate(counts, index_map, n), leakage_fraction(counts, index_map)))
        if include_exact:
            reports.append(report(
                EXACT_SHOTS, estimate_exact(state, index_map), leakage_fraction(state, index_map)
            ))
        return reports

    study = SenseStudy(direction=direction)
    for reports in map_ordered(run, tasks, threads):
        study.reports.extend(reports)
    logger.info(
        f"Sensing study N={spec.n_qubits}, M={spec.num_params}: "
        f"{len(norms)} norms x {len(shot_levels)} shot budgets x {instances} instances"
    )
    return study

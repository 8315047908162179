"""
疊加態合成

不經訓練直接求出具有指定 (K_rs, K_ts) 的參數 θ_s。
"""

from .synthesis import (
    evaluate_superposition,
    feasibility_bounds,
    gaussian_predicted_fidelities,
    orthogonal_direction,
    solve_superposition,
    superposition_cosine,
    superposition_error,
    superposition_sweep,
)
from .types import SWEEP_COLUMNS, SuperposeRecord, SuperposeRequest, SuperposeResult

__all__ = [
    "SWEEP_COLUMNS",
    "SuperposeRecord",
    "SuperposeRequest",
    "SuperposeResult",
    "evaluate_superposition",
    "feasibility_bounds",
    "gaussian_predicted_fidelities",
    "orthogonal_direction",
    "solve_superposition",
    "superposition_cosine",
    "superposition_error",
    "superposition_sweep",
]

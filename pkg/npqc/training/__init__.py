"""
VQA 訓練

保真度代價的梯度上升、自適應學習率、Adam 基準，以及單步掃描實驗。
"""

from .experiments import (
    fit_scaling,
    initial_params,
    learning_rate_scan,
    single_step_scan,
    step_sweep,
    target_from_distance,
)
from .rates import adaptive_rates, probe_rate
from .trainer import adaptive_step, single_adaptive_step, train
from .types import (
    TRACE_COLUMNS,
    AdamState,
    InitMode,
    LearningRatePoint,
    OptimizerConfig,
    OptimizerMethod,
    ScanPoint,
    ScanResult,
    StepOutcome,
    StopReason,
    TrainRecord,
    TrainTrace,
)

__all__ = [
    "TRACE_COLUMNS",
    "AdamState",
    "InitMode",
    "LearningRatePoint",
    "OptimizerConfig",
    "OptimizerMethod",
    "ScanPoint",
    "ScanResult",
    "StepOutcome",
    "StopReason",
    "TrainRecord",
    "TrainTrace",
    "adaptive_rates",
    "adaptive_step",
    "fit_scaling",
    "initial_params",
    "learning_rate_scan",
    "probe_rate",
    "single_adaptive_step",
    "single_step_scan",
    "step_sweep",
    "target_from_distance",
    "train",
]

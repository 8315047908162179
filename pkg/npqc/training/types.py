"""
VQA 訓練類型定義

定義最佳化器配置、訓練紀錄與單步掃描結果。
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from ..circuit import ParamVector
from ..exceptions import NPQCConfigurationError


class OptimizerMethod(Enum):
    """最佳化方法"""
    ADAPTIVE_GA = "adaptive"
    STANDARD_GA = "standard"
    ADAM = "adam"


class InitMode(Enum):
    """初始參數"""
    REFERENCE = "reference"
    RANDOM = "random"


class StopReason(Enum):
    """訓練結束原因"""
    MAX_ITERS = "max_iters"
    TARGET_REACHED = "target_reached"
    CONVERGED = "converged"
    STATIONARY = "stationary"


@dataclass
class OptimizerConfig:
    """最佳化器配置

    ADAPTIVE_GA 在前 adaptive_iters 次迭代使用自適應學習率，之後改用
    post_adaptive_rate；STANDARD_GA 固定使用 fixed_rate。
    """
    method: OptimizerMethod = OptimizerMethod.ADAPTIVE_GA
    adaptive_iters: int = 3
    post_adaptive_rate: float = 0.5
    fixed_rate: float = 1.0

    # Adam 超參數
    adam_rate: float = 0.05
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8

    max_iters: int = 100
    target_infidelity: Optional[float] = None

    # 每次自適應迭代重新計算 F(θ)，並以 K_0 修正探測步長
    use_qfim: bool = False
    ridge: float = 0.0
    k0: float = 1.0

    def __post_init__(self):
        if not isinstance(self.method, OptimizerMethod):
            try:
                self.method = OptimizerMethod(self.method)
            except ValueError as e:
                raise NPQCConfigurationError(
                    f"Unknown optimizer method: {self.method}", config_key="method"
                ) from e
        self.validate()

    def validate(self) -> None:
        errors = []

        for name in ("post_adaptive_rate", "fixed_rate", "adam_rate"):
            if getattr(self, name) <= 0:
                errors.append(f"{name} must be positive")

        if self.adaptive_iters < 0:
            errors.append("adaptive_iters must be non-negative")

        if self.max_iters < 0:
            errors.append("max_iters must be non-negative")

        if not 0 <= self.adam_beta1 < 1 or not 0 <= self.adam_beta2 < 1:
            errors.append("Adam betas must be in [0, 1)")

        if self.adam_epsilon <= 0:
            errors.append("adam_epsilon must be positive")

        if self.target_infidelity is not None and not 0 <= self.target_infidelity < 1:
            errors.append("target_infidelity must be in [0, 1)")

        if not 0 < self.k0 <= 1:
            errors.append("k0 must be in (0, 1]")

        if self.ridge < 0:
            errors.append("ridge must be non-negative")

        if errors:
            raise NPQCConfigurationError(
                f"Optimizer configuration validation failed: {'; '.join(errors)}"
            )

    def rate_for(self, iteration: int) -> Optional[float]:
        """固定學習率；自適應迭代回傳 None"""
        if self.method is OptimizerMethod.STANDARD_GA:
            return self.fixed_rate
        if self.method is OptimizerMethod.ADAM:
            return self.adam_rate
        if iteration < self.adaptive_iters:
            return None
        return self.post_adaptive_rate

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["method"] = self.method.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OptimizerConfig":
        return cls(**data)


@dataclass
class AdamState:
    """Adam 一階與二階動差"""
    m: np.ndarray
    v: np.ndarray
    timestep: int = 0

    @classmethod
    def zeros(cls, size: int) -> "AdamState":
        return cls(np.zeros(size), np.zeros(size))

    def step(self, gradient: np.ndarray, config: OptimizerConfig) -> np.ndarray:
        """回傳上升方向的位移"""
        self.timestep += 1
        self.m = config.adam_beta1 * self.m + (1 - config.adam_beta1) * gradient
        self.v = config.adam_beta2 * self.v + (1 - config.adam_beta2) * gradient ** 2
        m_hat = self.m / (1 - config.adam_beta1 ** self.timestep)
        v_hat = self.v / (1 - config.adam_beta2 ** self.timestep)
        return config.adam_rate * m_hat / (np.sqrt(v_hat) + config.adam_epsilon)


@dataclass(frozen=True)
class TrainRecord:
    """單次迭代紀錄；rate 為從此迭代出發所用的學習率，最後一筆為 None"""
    iteration: int
    fidelity: float
    grad_norm: float
    rate: Optional[float]
    method: OptimizerMethod
    seed: int
    wall_time: float = 0.0

    @property
    def infidelity(self) -> float:
        return 1.0 - self.fidelity

    def row(self) -> List[Any]:
        return [self.iteration, self.fidelity, self.grad_norm, self.rate, self.method.value, self.seed]


TRACE_COLUMNS = ["iteration", "fidelity", "grad_norm", "rate", "method", "seed"]


@dataclass
class TrainTrace:
    """訓練軌跡"""
    records: List[TrainRecord]
    final_params: ParamVector
    method: OptimizerMethod
    seed: int
    stop_reason: StopReason
    fidelity_evaluations: int = 0

    @property
    def fidelities(self) -> np.ndarray:
        return np.array([r.fidelity for r in self.records])

    @property
    def infidelities(self) -> np.ndarray:
        return 1.0 - self.fidelities

    @property
    def final_fidelity(self) -> float:
        return self.records[-1].fidelity

    @property
    def steps(self) -> int:
        return sum(1 for r in self.records if r.rate is not None)

    def iterations_to(self, infidelity: float) -> Optional[int]:
        """第一次達到 ΔK <= infidelity 的迭代次數"""
        for record in self.records:
            if record.infidelity <= infidelity:
                return record.iteration
        return None

    def rows(self) -> List[List[Any]]:
        return [record.row() for record in self.records]


@dataclass(frozen=True)
class StepOutcome:
    """一次自適應梯度上升步驟的結果"""
    fidelity_before: float
    fidelity_after: float
    probe_rate: Optional[float]
    rate: Optional[float]

    @property
    def infidelity_before(self) -> float:
        return 1.0 - self.fidelity_before

    @property
    def infidelity_after(self) -> float:
        return 1.0 - self.fidelity_after


@dataclass(frozen=True)
class ScanPoint:
    """同一請求初始不保真度下多個實例的平均結果"""
    n_qubits: int
    n_layers: int
    requested_infidelity: float
    infidelity_before: float
    infidelity_after: float
    infidelity_after_std: float
    instances: int


@dataclass
class ScanResult:
    """單步掃描與 ΔK_after = c (-log(1 - ΔK_before))^ν 的擬合"""
    init: InitMode
    points: List[ScanPoint]
    outcomes: List[StepOutcome] = field(default_factory=list)
    c: float = float("nan")
    nu: float = float("nan")


@dataclass(frozen=True)
class LearningRatePoint:
    """學習率 λ·α_t 單步後的平均不保真度"""
    requested_infidelity: float
    scale: float
    infidelity_after: float
    infidelity_after_std: float
    instances: int

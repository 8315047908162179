"""
疊加態合成類型定義
"""

from dataclasses import dataclass
from typing import Any, List, Optional

import numpy as np

from ..circuit import ParamVector
from ..exceptions import NPQCArgumentError, NPQCShapeError

SWEEP_COLUMNS = ["K_rs", "K_ts", "cos_angle", "feasible", "delta_C", "M", "dK_rt", "seed", "instance"]


@dataclass(frozen=True)
class SuperposeRequest:
    """希望得到的保真度 K_rs = |<ψ_r|ψ_s>|^2 與 K_ts = |<ψ_t|ψ_s>|^2"""
    theta_r: ParamVector
    theta_t: ParamVector
    k_rs: float
    k_ts: float

    def __post_init__(self):
        for name in ("k_rs", "k_ts"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise NPQCArgumentError(f"{name} must be in (0, 1], got {value}", argument=name)
        if self.theta_r.spec != self.theta_t.spec:
            raise NPQCShapeError(
                "theta_r and theta_t use different circuit layouts",
                expected=self.theta_r.spec.to_dict(),
                actual=self.theta_t.spec.to_dict()
            )

    @property
    def displacement(self) -> np.ndarray:
        """Δθ_{r,t} = θ_t - θ_r"""
        return self.theta_t.values - self.theta_r.values

    @property
    def distance(self) -> float:
        return float(np.linalg.norm(self.displacement))


@dataclass(frozen=True)
class SuperposeResult:
    """θ_s 的解析解；不可行時 theta_s 為 None

    realized_k_rs、realized_k_ts、delta_c 由模擬器量測後填入。
    """
    theta_s: Optional[ParamVector]
    cos_angle: float
    feasible: bool
    realized_k_rs: Optional[float] = None
    realized_k_ts: Optional[float] = None
    delta_c: Optional[float] = None


@dataclass(frozen=True)
class SuperposeRecord:
    """掃描中的一筆紀錄"""
    instance: int
    k_rs: float
    k_ts: float
    cos_angle: float
    feasible: bool
    delta_c: Optional[float]
    n_params: int
    infidelity_rt: float
    seed: int

    def row(self) -> List[Any]:
        return [
            self.k_rs, self.k_ts, self.cos_angle, self.feasible, self.delta_c,
            self.n_params, self.infidelity_rt, self.seed, self.instance,
        ]

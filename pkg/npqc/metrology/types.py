"""
多參數感測類型定義
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..circuit import NpqcSpec

EXACT_SHOTS = -1

REPORT_COLUMNS = [
    "N", "p", "M", "norm_dtheta", "shots", "instance", "rel_rmse", "leakage_fraction", "seed",
]


@dataclass(frozen=True)
class BasisIndexMap:
    """每個 Y_ONLY 參數對應的計算基底索引 v_i"""
    spec: NpqcSpec
    indices: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def __getitem__(self, parameter: int) -> int:
        return self.indices[parameter]

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def as_array(self) -> np.ndarray:
        return np.array(self.indices, dtype=np.int64)

    @property
    def support(self) -> frozenset:
        """{0} ∪ {v_i}"""
        return frozenset((0, *self.indices))


@dataclass
class SenseReport:
    """單一實例在單一取樣數下的估計結果；shots = -1 代表精確機率"""
    n_qubits: int
    n_layers: int
    n_params: int
    norm: float
    shots: int
    instance: int
    seed: int
    true_delta: np.ndarray
    estimate: np.ndarray
    leakage_fraction: float

    @property
    def exact(self) -> bool:
        return self.shots == EXACT_SHOTS

    @property
    def squared_errors(self) -> np.ndarray:
        return (self.estimate - np.abs(self.true_delta)) ** 2

    @property
    def rel_rmse(self) -> float:
        """sqrt(<(|Δθ|' - |Δθ|)^2>) / <|Δθ_i|>"""
        return _relative_rmse(self.squared_errors, np.abs(self.true_delta))

    def row(self) -> List[Any]:
        return [
            self.n_qubits, self.n_layers, self.n_params, self.norm, self.shots,
            self.instance, self.rel_rmse, self.leakage_fraction, self.seed,
        ]


def _relative_rmse(squared_errors: np.ndarray, magnitudes: np.ndarray) -> float:
    rmse = float(np.sqrt(np.mean(squared_errors)))
    scale = float(np.mean(magnitudes))
    if scale == 0.0:
        return 0.0 if rmse == 0.0 else float("inf")
    return rmse / scale


@dataclass
class SenseStudy:
    """(|Δθ|, n) 網格上所有實例的報告

    相對 RMSE 在參數與實例上合併後計算，分母為所有 |Δθ_i| 的平均。
    """
    reports: List[SenseReport] = field(default_factory=list)
    direction: str = "random"

    def select(self, norm: float, shots: int) -> List[SenseReport]:
        return [
            r for r in self.reports if np.isclose(r.norm, norm) and r.shots == shots
        ]

    def pooled_rmse(self, norm: float, shots: int) -> float:
        group = self.select(norm, shots)
        if not group:
            raise KeyError((norm, shots))
        errors = np.concatenate([r.squared_errors for r in group])
        magnitudes = np.concatenate([np.abs(r.true_delta) for r in group])
        return _relative_rmse(errors, magnitudes)

    def mean_leakage(self, norm: float, shots: int) -> float:
        return float(np.mean([r.leakage_fraction for r in self.select(norm, shots)]))

    @property
    def norms(self) -> List[float]:
        return sorted({r.norm for r in self.reports})

    @property
    def shot_levels(self) -> List[int]:
        return sorted({r.shots for r in self.reports})

    def summary(self) -> List[Dict[str, Any]]:
        return [
            {
                "norm_dtheta": norm,
                "shots": shots,
                "rel_rmse": self.pooled_rmse(norm, shots),
                "leakage_fraction": self.mean_leakage(norm, shots),
                "instances": len(self.select(norm, shots)),
            }
            for norm in self.norms
            for shots in self.shot_levels
            if self.select(norm, shots)
        ]


@dataclass(frozen=True)
class CramerRaoReport:
    """量子 Cramér-Rao 結構檢查；不滿秩時略過反矩陣界"""
    n_params: int
    trace: float
    inverse_trace: Optional[float]
    rank: int
    min_eigenvalue: float
    tolerance: float = 1e-6

    @property
    def full_rank(self) -> bool:
        return self.rank == self.n_params

    @property
    def harmonic_bound(self) -> float:
        """M² / Tr(F)"""
        return self.n_params ** 2 / self.trace if self.trace > 0 else float("inf")

    @property
    def trace_ok(self) -> bool:
        """Tr(F) <= M"""
        return self.trace <= self.n_params + self.tolerance

    @property
    def inverse_ok(self) -> Optional[bool]:
        """Tr(F^-1) >= M²/Tr(F) >= M"""
        if self.inverse_trace is None:
            return None
        return (
            self.inverse_trace >= self.harmonic_bound - self.tolerance
            and self.harmonic_bound >= self.n_params - self.tolerance
        )

    @property
    def passed(self) -> bool:
        return self.trace_ok and self.inverse_ok is not False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "M": self.n_params,
            "trace_F": self.trace,
            "trace_F_inv": self.inverse_trace,
            "rank": self.rank,
            "min_eigenvalue": self.min_eigenvalue,
            "trace_ok": self.trace_ok,
            "inverse_ok": self.inverse_ok,
        }

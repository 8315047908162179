"""
量子幾何類型定義
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg

from ..exceptions import NPQCShapeError
from ..statevec import StateVector


@dataclass
class GradientSet:
    """狀態 |ψ(θ)> 與其 M 個未正規化的導數態 ∂_i|ψ(θ)>

    derivatives 的形狀為 (M, 2^N)，第 i 列對應參數 i。
    """
    state: StateVector
    derivatives: np.ndarray

    def __post_init__(self):
        self.derivatives = np.asarray(self.derivatives, dtype=np.complex128)
        if self.derivatives.ndim != 2 or self.derivatives.shape[1] != self.state.dim:
            raise NPQCShapeError(
                f"Derivative array shape {self.derivatives.shape} does not match "
                f"state dimension {self.state.dim}",
                expected=self.state.dim,
                actual=self.derivatives.shape
            )

    def __len__(self) -> int:
        return self.derivatives.shape[0]

    def __getitem__(self, index: int) -> StateVector:
        return StateVector(self.state.n_qubits, self.derivatives[index].copy())

    @property
    def states(self) -> List[StateVector]:
        return [self[i] for i in range(len(self))]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.derivatives, axis=1)


@dataclass
class QfimMatrix:
    """M×M 實對稱半正定量子 Fisher 資訊矩陣"""
    entries: np.ndarray
    _eigenvalues: Optional[np.ndarray] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NPQCShapeError(
                f"QFIM must be square, got shape {entries.shape}",
                expected="(M, M)",
                actual=entries.shape
            )
        self.entries = entries

    @classmethod
    def identity(cls, size: int) -> "QfimMatrix":
        return cls(np.eye(size))

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def eigenvalues(self) -> np.ndarray:
        if self._eigenvalues is None:
            self._eigenvalues = scipy.linalg.eigvalsh(self.entries)
        return self._eigenvalues

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def rank(self, floor: float = 1e-10) -> int:
        return int(np.count_nonzero(self.eigenvalues() > floor))

    def inverse_trace(self, floor: float = 1e-10) -> float:
        """Tr(F^-1)，特徵值先截斷於 floor"""
        return float(np.sum(1.0 / np.clip(self.eigenvalues(), floor, None)))

    def quadratic_form(self, vector: np.ndarray) -> float:
        """vᵀ F v"""
        vector = np.asarray(vector, dtype=np.float64)
        return float(vector @ self.entries @ vector)

    def max_deviation_from_identity(self) -> float:
        return float(np.max(np.abs(self.entries - np.eye(self.size))))

    def is_symmetric(self, atol: float = 1e-9) -> bool:
        return bool(np.allclose(self.entries, self.entries.T, atol=atol, rtol=0.0))


@dataclass(frozen=True)
class LandscapePoint:
    """保真度地形上的一個樣本"""
    distance: float
    instance: int
    fidelity: float
    gaussian: float
    haar_floor: float


@dataclass(frozen=True)
class GradientVarianceReport:
    """固定 |Δθ_{r,t}| 時 ∂_k K 的蒙地卡羅變異數與模型預測

    方向在 M 維球面上均勻抽樣，k 取遍所有參數後合併。
    """
    distance: float
    samples: int
    n_params: int
    mean_fidelity: float
    empirical_variance: float
    predicted_variance: float
    direction_distribution: str = "uniform-sphere"

    @property
    def ratio(self) -> float:
        if self.predicted_variance == 0.0:
            return float("inf")
        return self.empirical_variance / self.predicted_variance

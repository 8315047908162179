"""
狀態向量模擬器類型定義

定義閘類型、閘操作以及稠密狀態向量。

基底索引慣例：量子位元 q (從 1 開始) 對應基底索引的第 q-1 個位元，
即量子位元 1 為最低有效位元。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..exceptions import NPQCShapeError, NPQCArgumentError


class Axis(Enum):
    """旋轉軸 / Pauli 生成元"""
    Y = "y"
    Z = "z"


class GateKind(Enum):
    """閘類型"""
    RY = "RY"
    RZ = "RZ"
    CPHASE = "CPHASE"

    @property
    def generator(self) -> Optional[Axis]:
        """旋轉閘的 Pauli 生成元，CPHASE 沒有"""
        return {GateKind.RY: Axis.Y, GateKind.RZ: Axis.Z}.get(self)


@dataclass(frozen=True)
class GateOp:
    """閘操作

    qubits 為從 1 開始的量子位元索引。param_index 標記此旋轉對應的
    電路參數位置，固定閘為 None。
    """
    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[float] = None
    param_index: Optional[int] = None

    def __post_init__(self):
        if self.kind is GateKind.CPHASE:
            if len(self.qubits) != 2:
                raise NPQCArgumentError("CPHASE acts on exactly two qubits", argument="qubits")
            if self.qubits[0] == self.qubits[1]:
                raise NPQCArgumentError(
                    f"CPHASE qubits must be distinct, got {self.qubits}",
                    argument="qubits"
                )
            if self.angle is not None:
                raise NPQCArgumentError("CPHASE takes no angle", argument="angle")
        else:
            if len(self.qubits) != 1:
                raise NPQCArgumentError(
                    f"{self.kind.value} acts on exactly one qubit", argument="qubits"
                )
            if self.angle is None:
                raise NPQCArgumentError(f"{self.kind.value} requires an angle", argument="angle")

    @classmethod
    def ry(cls, qubit: int, angle: float, param_index: Optional[int] = None) -> "GateOp":
        return cls(GateKind.RY, (qubit,), float(angle), param_index)

    @classmethod
    def rz(cls, qubit: int, angle: float, param_index: Optional[int] = None) -> "GateOp":
        return cls(GateKind.RZ, (qubit,), float(angle), param_index)

    @classmethod
    def cphase(cls, control: int, target: int) -> "GateOp":
        return cls(GateKind.CPHASE, (control, target))

    def inverse(self) -> "GateOp":
        """逆閘：旋轉取負角，CPHASE 自逆"""
        if self.kind is GateKind.CPHASE:
            return self
        return GateOp(self.kind, self.qubits, -self.angle, None)

    def fixed(self) -> "GateOp":
        """去除參數標記的副本"""
        if self.param_index is None:
            return self
        return GateOp(self.kind, self.qubits, self.angle, None)


@dataclass
class StateVector:
    """稠密狀態向量

    amplitudes 長度為 2^n_qubits 的 complex128 陣列。同一時間只應由
    一個執行緒修改。
    """
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.shape[0] != 1 << self.n_qubits:
            raise NPQCShapeError(
                f"Expected {1 << self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got shape {self.amplitudes.shape}",
                expected=1 << self.n_qubits,
                actual=self.amplitudes.shape
            )

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        """計算基底機率 |amplitude|^2"""
        return np.abs(self.amplitudes) ** 2

    def __len__(self) -> int:
        return self.dim

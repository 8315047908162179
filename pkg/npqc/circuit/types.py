"""
NPQC 電路類型定義

定義電路規格、參數向量與通用的參數化電路程式。

參數排列 (layout_version 1)：以層為主序；層內依量子位元遞增；每個量子位元
先 y 後 z (Y_ONLY 沒有 z)。第 1 層涵蓋全部 N 個量子位元，之後各層只涵蓋
奇數量子位元 1, 3, ..., N-1。
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import NPQCArgumentError, NPQCDepthError, NPQCShapeError
from ..statevec import Axis, GateOp, StateVector, apply_gates, zero_state


LAYOUT_VERSION = 1


class Variant(Enum):
    """電路變體"""
    FULL = "full"
    Y_ONLY = "y_only"


@dataclass(frozen=True)
class NpqcSpec:
    """不可變的 NPQC 規格

    shift_sequence 由 (n_qubits, n_layers, shift_order, shift_seed) 重新計算，
    不會被序列化。
    """
    n_qubits: int
    n_layers: int
    variant: Variant = Variant.FULL
    shift_order: str = "ascending"
    shift_seed: int = 0

    def __post_init__(self):
        if not isinstance(self.variant, Variant):
            object.__setattr__(self, "variant", Variant(self.variant))
        if self.n_qubits < 2 or self.n_qubits % 2:
            raise NPQCArgumentError(
                f"n_qubits must be an even integer >= 2, got {self.n_qubits}",
                argument="n_qubits"
            )
        if self.n_layers < 1:
            raise NPQCArgumentError(
                f"n_layers must be >= 1, got {self.n_layers}",
                argument="n_layers"
            )
        if self.n_layers > self.max_layers:
            raise NPQCDepthError(
                f"n_layers={self.n_layers} exceeds p_max={self.max_layers} "
                f"for {self.n_qubits} qubits",
                n_layers=self.n_layers,
                max_layers=self.max_layers
            )

    @property
    def max_layers(self) -> int:
        """p_max = 2^(N/2)"""
        return 1 << (self.n_qubits // 2)

    @cached_property
    def shift_sequence(self) -> Tuple[int, ...]:
        """第 2..p 層的 shift factor"""
        from .shift import shift_sequence
        return tuple(
            shift_sequence(self.n_qubits, self.n_layers, self.shift_order, self.shift_seed)
        )

    @property
    def num_params(self) -> int:
        half = self.n_qubits // 2
        if self.variant is Variant.FULL:
            return self.n_qubits * (self.n_layers + 1)
        return half * (self.n_layers + 1)

    @cached_property
    def layout(self) -> Tuple[Tuple[int, int, Axis], ...]:
        """參數索引到 (layer, qubit, axis) 的對應"""
        axes = (Axis.Y, Axis.Z) if self.variant is Variant.FULL else (Axis.Y,)
        entries: List[Tuple[int, int, Axis]] = []
        for layer in range(1, self.n_layers + 1):
            qubits = range(1, self.n_qubits + 1) if layer == 1 else range(1, self.n_qubits, 2)
            for qubit in qubits:
                for axis in axes:
                    entries.append((layer, qubit, axis))
        return tuple(entries)

    @cached_property
    def _index(self) -> Dict[Tuple[int, int, Axis], int]:
        return {entry: i for i, entry in enumerate(self.layout)}

    def index_of(self, layer: int, qubit: int, axis: Axis) -> int:
        try:
            return self._index[(layer, qubit, axis)]
        except KeyError:
            raise NPQCArgumentError(
                f"No parameter at layer={layer}, qubit={qubit}, axis={axis.value}",
                argument="layout"
            ) from None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "n_qubits": self.n_qubits,
            "n_layers": self.n_layers,
            "variant": self.variant.value,
            "layout_version": LAYOUT_VERSION,
        }
        if self.shift_order != "ascending":
            data["shift_order"] = self.shift_order
            data["shift_seed"] = self.shift_seed
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NpqcSpec":
        version = data.get("layout_version", LAYOUT_VERSION)
        if version != LAYOUT_VERSION:
            raise NPQCArgumentError(
                f"Unsupported layout_version {version}", argument="layout_version"
            )
        return cls(
            n_qubits=int(data["n_qubits"]),
            n_layers=int(data["n_layers"]),
            variant=Variant(data.get("variant", Variant.FULL.value)),
            shift_order=data.get("shift_order", "ascending"),
            shift_seed=int(data.get("shift_seed", 0)),
        )

    @classmethod
    def from_json(cls, text: str) -> "NpqcSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class ParamVector:
    """長度為 M 的參數向量 (弧度)，建立後唯讀"""
    spec: NpqcSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if values.shape[0] != self.spec.num_params:
            raise NPQCShapeError(
                f"Expected {self.spec.num_params} parameters, got {values.shape[0]}",
                expected=self.spec.num_params,
                actual=values.shape[0]
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.shape[0]

    def shifted(self, delta: np.ndarray) -> "ParamVector":
        """θ + Δθ"""
        return ParamVector(self.spec, self.values + np.asarray(delta, dtype=np.float64))

    def distance(self, other: "ParamVector") -> float:
        return float(np.linalg.norm(self.values - other.values))

    def entry(self, index: int) -> Tuple[int, int, Axis]:
        return self.spec.layout[index]


@dataclass(frozen=True)
class CircuitProgram:
    """通用 Pauli 旋轉參數化電路

    gates 依作用順序排列；帶 param_index 的旋轉閘即為參數位置。
    """
    n_qubits: int
    gates: Tuple[GateOp, ...]
    n_params: int
    label: str = "pqc"
    param_positions: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        positions: List[Optional[int]] = [None] * self.n_params
        for pos, gate in enumerate(self.gates):
            if gate.param_index is None:
                continue
            if gate.kind.generator is None:
                raise NPQCArgumentError(
                    "Only rotation gates can carry parameters", argument="gates"
                )
            if not 0 <= gate.param_index < self.n_params or positions[gate.param_index] is not None:
                raise NPQCArgumentError(
                    f"Invalid or repeated param_index {gate.param_index}", argument="gates"
                )
            positions[gate.param_index] = pos
        missing = [i for i, p in enumerate(positions) if p is None]
        if missing:
            raise NPQCShapeError(
                f"Parameters without gates: {missing[:5]}",
                expected=self.n_params,
                actual=self.n_params - len(missing)
            )
        object.__setattr__(self, "param_positions", tuple(positions))

    @property
    def values(self) -> np.ndarray:
        return np.array([self.gates[p].angle for p in self.param_positions], dtype=np.float64)

    def rebind(self, values: Sequence[float]) -> "CircuitProgram":
        """以新的參數值重建電路"""
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if values.shape[0] != self.n_params:
            raise NPQCShapeError(
                f"Expected {self.n_params} parameters, got {values.shape[0]}",
                expected=self.n_params,
                actual=values.shape[0]
            )
        gates = [
            gate if gate.param_index is None
            else GateOp(gate.kind, gate.qubits, float(values[gate.param_index]), gate.param_index)
            for gate in self.gates
        ]
        return CircuitProgram(self.n_qubits, tuple(gates), self.n_params, self.label)

    def state(self) -> StateVector:
        return apply_gates(zero_state(self.n_qubits), self.gates, inplace=True)

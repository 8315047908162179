"""
NPQC 電路建構

閘列表依作用順序輸出 (乘積中最右邊的因子最先作用)。
第 l > 1 層對每個 k = 1..N/2 依序輸出：固定 RY(pi/2) 作用於 2k-1、
CPHASE(2k-1, wrap(2k+2a_l))、參數化 RY 與 RZ (Y_ONLY 省略 RZ)。
"""

import logging
from typing import List, Optional, Sequence

import numpy as np

from ..exceptions import NPQCShapeError, NPQCVariantError
from ..statevec import Axis, GateOp, StateVector, make_rng
from .types import CircuitProgram, NpqcSpec, ParamVector, Variant


logger = logging.getLogger(__name__)


def wrap(index: int, n_qubits: int) -> int:
    """從 1 開始的循環索引：((m-1) mod N) + 1"""
    return ((index - 1) % n_qubits) + 1


def num_params(spec: NpqcSpec) -> int:
    """FULL 為 N(p+1)，Y_ONLY 為 (N/2)(p+1)"""
    return spec.num_params


def reference_params(spec: NpqcSpec) -> ParamVector:
    """θ_r：所有 y 角為 pi/2，所有 z 角為 0"""
    values = np.array(
        [np.pi / 2 if axis is Axis.Y else 0.0 for _, _, axis in spec.layout],
        dtype=np.float64
    )
    return ParamVector(spec, values)


def random_params(spec: NpqcSpec, seed: int, *stream: int) -> ParamVector:
    """在 [0, 2pi]^M 上均勻抽樣"""
    rng = make_rng(seed, *stream)
    return ParamVector(spec, rng.uniform(0.0, 2 * np.pi, spec.num_params))


def random_direction(size: int, seed: int, *stream: int) -> np.ndarray:
    """M 維單位球面上的均勻方向"""
    rng = make_rng(seed, *stream)
    direction = rng.standard_normal(size)
    return direction / np.linalg.norm(direction)


def _as_values(spec: NpqcSpec, theta) -> np.ndarray:
    if isinstance(theta, ParamVector):
        if theta.spec.num_params != spec.num_params or theta.spec.layout != spec.layout:
            raise NPQCShapeError(
                "Parameter vector layout does not match the circuit spec",
                expected=spec.num_params,
                actual=len(theta)
            )
        return theta.values
    values = np.asarray(theta, dtype=np.float64).reshape(-1)
    if values.shape[0] != spec.num_params:
        raise NPQCShapeError(
            f"Expected {spec.num_params} parameters, got {values.shape[0]}",
            expected=spec.num_params,
            actual=values.shape[0]
        )
    return values


def circuit_gates(spec: NpqcSpec, theta) -> List[GateOp]:
    """U(θ) 的閘列表，依作用順序"""
    values = _as_values(spec, theta)
    n = spec.n_qubits
    with_z = spec.variant is Variant.FULL
    gates: List[GateOp] = []

    def rotations(layer: int, qubit: int) -> None:
        i = spec.index_of(layer, qubit, Axis.Y)
        gates.append(GateOp.ry(qubit, values[i], param_index=i))
        if with_z:
            j = spec.index_of(layer, qubit, Axis.Z)
            gates.append(GateOp.rz(qubit, values[j], param_index=j))

    for qubit in range(1, n + 1):
        rotations(1, qubit)

    for layer, shift in enumerate(spec.shift_sequence, start=2):
        for k in range(1, n // 2 + 1):
            odd = 2 * k - 1
            gates.append(GateOp.ry(odd, np.pi / 2))
            gates.append(GateOp.cphase(odd, wrap(2 * k + 2 * shift, n)))
            rotations(layer, odd)

    return gates


def inverse_gates(gates: Sequence[GateOp]) -> List[GateOp]:
    """U^dagger 的閘列表 (順序反轉、角度取負)"""
    return [gate.inverse() for gate in reversed(gates)]


def build_program(
    spec: NpqcSpec,
    theta,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> CircuitProgram:
    """V_ref U(θ_r)^dagger U(θ) 的通用電路表示"""
    gates = circuit_gates(spec, theta)
    dressing = inverse_gates(circuit_gates(spec, reference_params(spec)))
    gates.extend(dressing)
    if v_ref:
        gates.extend(gate.fixed() for gate in v_ref)
    return CircuitProgram(
        spec.n_qubits,
        tuple(gates),
        spec.num_params,
        label=f"npqc-{spec.variant.value}-n{spec.n_qubits}-p{spec.n_layers}",
    )


def prepare_state(
    spec: NpqcSpec,
    theta,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> StateVector:
    """V_ref U(θ_r)^dagger U(θ)|0>；θ = θ_r 時結果為 V_ref|0>"""
    return build_program(spec, theta, v_ref).state()


def prepare_y_state(spec: NpqcSpec, theta) -> StateVector:
    """U_y^dagger(θ_r) U_y(θ)|0>，僅適用 Y_ONLY"""
    if spec.variant is not Variant.Y_ONLY:
        raise NPQCVariantError(
            "prepare_y_state requires a Y_ONLY spec", variant=spec.variant.value
        )
    return prepare_state(spec, theta)


def hardware_efficient_program(n_qubits: int, n_layers: int, theta) -> CircuitProgram:
    """一般硬體高效電路：每層 RY、RZ 作用於所有量子位元，層間以 CZ 鏈糾纏"""
    n_params = 2 * n_qubits * n_layers
    values = np.asarray(theta, dtype=np.float64).reshape(-1)
    if values.shape[0] != n_params:
        raise NPQCShapeError(
            f"Expected {n_params} parameters, got {values.shape[0]}",
            expected=n_params,
            actual=values.shape[0]
        )
    gates: List[GateOp] = []
    index = 0
    for layer in range(n_layers):
        for qubit in range(1, n_qubits + 1):
            gates.append(GateOp.ry(qubit, values[index], param_index=index))
            gates.append(GateOp.rz(qubit, values[index + 1], param_index=index + 1))
            index += 2
        if layer < n_layers - 1:
            for qubit in range(1, n_qubits):
                gates.append(GateOp.cphase(qubit, qubit + 1))
    return CircuitProgram(n_qubits, tuple(gates), n_params, label=f"hea-n{n_qubits}-l{n_layers}")

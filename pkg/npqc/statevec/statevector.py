"""
狀態向量模擬器

提供閘集合、內積、保真度與計算基底取樣，是其他模組的基礎。
"""

import logging
from typing import Dict, Iterable

import numpy as np

from ..config import get_config
from ..exceptions import (
    NPQCArgumentError,
    NPQCCapacityError,
    NPQCQubitIndexError,
    NPQCShapeError,
)
from . import kernels
from .rng import make_rng
from .types import Axis, GateKind, GateOp, StateVector


logger = logging.getLogger(__name__)


def _check_capacity(n_qubits: int) -> None:
    limit = get_config().max_qubits
    if not 1 <= n_qubits <= limit:
        raise NPQCCapacityError(
            f"n_qubits={n_qubits} outside supported range [1, {limit}]",
            n_qubits=n_qubits,
            limit=limit
        )


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 1 <= qubit <= state.n_qubits:
        raise NPQCQubitIndexError(
            f"Qubit index {qubit} invalid for {state.n_qubits}-qubit state",
            qubit=qubit
        )


def _check_same_shape(a: StateVector, b: StateVector) -> None:
    if a.n_qubits != b.n_qubits:
        raise NPQCShapeError(
            f"Dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits",
            expected=a.n_qubits,
            actual=b.n_qubits
        )


def zero_state(n_qubits: int) -> StateVector:
    """建立 |0...0>"""
    _check_capacity(n_qubits)
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate_inplace(state: StateVector, gate: GateOp) -> StateVector:
    """原地套用閘並回傳同一個狀態"""
    for q in gate.qubits:
        _check_qubit(state, q)

    amps = state.amplitudes
    if gate.kind is GateKind.RY:
        kernels.apply_ry(amps, gate.qubits[0] - 1, gate.angle)
    elif gate.kind is GateKind.RZ:
        kernels.apply_rz(amps, gate.qubits[0] - 1, gate.angle)
    else:
        kernels.apply_cz(amps, gate.qubits[0] - 1, gate.qubits[1] - 1)
    return state


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """套用閘，回傳新的狀態"""
    return apply_gate_inplace(state.copy(), gate)


def apply_gates(
    state: StateVector,
    gates: Iterable[GateOp],
    inplace: bool = False
) -> StateVector:
    """依作用順序 (由左至右) 套用閘列表"""
    out = state if inplace else state.copy()
    for gate in gates:
        apply_gate_inplace(out, gate)
    return out


def apply_pauli(state: StateVector, axis: Axis, qubit: int, inplace: bool = False) -> StateVector:
    """套用 Pauli 矩陣 sigma^y 或 sigma^z"""
    _check_qubit(state, qubit)
    out = state if inplace else state.copy()
    if axis is Axis.Y:
        kernels.apply_pauli_y(out.amplitudes, qubit - 1)
    else:
        kernels.apply_pauli_z(out.amplitudes, qubit - 1)
    return out


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>，a 取共軛"""
    _check_same_shape(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2"""
    return abs(inner_product(a, b)) ** 2


def sample_basis(state: StateVector, shots: int, seed: int, *stream: int) -> Dict[int, int]:
    """從 |amplitude|^2 進行多項式取樣

    Returns:
        基底索引到次數的映射，只包含出現過的索引。
    """
    if shots < 1:
        raise NPQCArgumentError(f"shots must be >= 1, got {shots}", argument="shots")

    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = make_rng(seed, *stream)
    counts = rng.multinomial(int(shots), probs)
    nonzero = np.flatnonzero(counts)
    return {int(i): int(counts[i]) for i in nonzero}


def random_haar_state(n_qubits: int, seed: int, *stream: int) -> StateVector:
    """正規化獨立複數高斯向量，得到 Haar 隨機態"""
    _check_capacity(n_qubits)
    rng = make_rng(seed, *stream)
    dim = 1 << n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amps /= np.linalg.norm(amps)
    return StateVector(n_qubits, amps)


def basis_state(n_qubits: int, index: int) -> StateVector:
    """計算基底態 |index>"""
    _check_capacity(n_qubits)
    if not 0 <= index < 1 << n_qubits:
        raise NPQCArgumentError(f"Basis index {index} out of range", argument="index")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n_qubits, amps)


def excited_index(qubit: int) -> int:
    """只有量子位元 qubit 被激發的基底索引"""
    return 1 << (qubit - 1)


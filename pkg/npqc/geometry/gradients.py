"""
解析梯度與量子 Fisher 資訊矩陣

導數態以 Pauli 插入計算：在參數化旋轉之後插入 (-i/2)P，再套用其餘電路
(包含參考態修飾)。保真度梯度用伴隨反向掃描，一次前向加一次反向即可得到全部分量。
"""

import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from ..circuit import CircuitProgram, NpqcSpec, build_program
from ..config import get_config
from ..exceptions import NPQCShapeError, NPQCSingularityError
from ..parallel import map_ordered
from ..statevec import (
    GateOp,
    StateVector,
    apply_gate_inplace,
    apply_gates,
    apply_pauli,
    fidelity,
    inner_product,
    zero_state,
)
from .types import GradientSet, QfimMatrix


logger = logging.getLogger(__name__)


def program_gradient_states(program: CircuitProgram, threads: Optional[int] = None) -> GradientSet:
    """任意 Pauli 旋轉電路的導數態"""
    state = zero_state(program.n_qubits)
    branches = []
    for pos, gate in enumerate(program.gates):
        apply_gate_inplace(state, gate)
        if gate.param_index is None:
            continue
        branch = apply_pauli(state, gate.kind.generator, gate.qubits[0])
        branch.amplitudes *= -0.5j
        branches.append((gate.param_index, pos, branch))

    def finish(item):
        _, pos, branch = item
        return apply_gates(branch, program.gates[pos + 1:], inplace=True).amplitudes

    results = map_ordered(finish, branches, threads)
    derivatives = np.empty((program.n_params, state.dim), dtype=np.complex128)
    for (index, _, _), amplitudes in zip(branches, results):
        derivatives[index] = amplitudes
    return GradientSet(state, derivatives)


def gradient_states(
    spec: NpqcSpec,
    theta,
    v_ref: Optional[Sequence[GateOp]] = None,
    threads: Optional[int] = None,
) -> GradientSet:
    """NPQC 的導數態 ∂_i V_ref U(θ_r)^dagger U(θ)|0>"""
    return program_gradient_states(build_program(spec, theta, v_ref), threads)


def qfim_from_gradients(gradients: GradientSet) -> QfimMatrix:
    """F_ij = 4 Re[<∂_i|∂_j> - <∂_i|ψ><ψ|∂_j>]"""
    g = gradients.derivatives
    psi = gradients.state.amplitudes
    overlaps = g.conj() @ g.T
    projections = g.conj() @ psi
    entries = 4.0 * np.real(overlaps - np.outer(projections, projections.conj()))
    return QfimMatrix(0.5 * (entries + entries.T))


def program_qfim(program: CircuitProgram, threads: Optional[int] = None) -> QfimMatrix:
    return qfim_from_gradients(program_gradient_states(program, threads))


def qfim(
    spec: NpqcSpec,
    theta,
    v_ref: Optional[Sequence[GateOp]] = None,
    threads: Optional[int] = None,
) -> QfimMatrix:
    """NPQC 在 θ 的 QFIM；θ_r 時為單位矩陣"""
    return program_qfim(build_program(spec, theta, v_ref), threads)


def qng(
    gradient: np.ndarray,
    metric: Union[QfimMatrix, np.ndarray],
    ridge: float = 0.0,
    floor: Optional[float] = None,
) -> np.ndarray:
    """求解 (F + ridge·I) x = gradient

    以特徵分解求逆；ridge 為 0 且最小特徵值低於 floor 時視為奇異。
    """
    entries = metric.entries if isinstance(metric, QfimMatrix) else np.asarray(metric, dtype=np.float64)
    gradient = np.asarray(gradient, dtype=np.float64).reshape(-1)
    if entries.shape != (gradient.shape[0], gradient.shape[0]):
        raise NPQCShapeError(
            f"Metric shape {entries.shape} does not match gradient length {gradient.shape[0]}",
            expected=(gradient.shape[0], gradient.shape[0]),
            actual=entries.shape
        )
    floor = get_config().eigen_floor if floor is None else floor

    matrix = entries + ridge * np.eye(gradient.shape[0])
    eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    if eigenvalues[0] < floor:
        if ridge == 0.0:
            raise NPQCSingularityError(
                f"QFIM is singular (min eigenvalue {eigenvalues[0]:.3e}); pass a ridge",
                min_eigenvalue=float(eigenvalues[0])
            )
        logger.warning(f"Clipping {np.count_nonzero(eigenvalues < floor)} eigenvalues at {floor}")
        eigenvalues = np.clip(eigenvalues, floor, None)
    return eigenvectors @ ((eigenvectors.T @ gradient) / eigenvalues)


def program_fidelity_and_gradient(
    program: CircuitProgram,
    target: StateVector,
) -> Tuple[float, np.ndarray]:
    """K = |<ψ_t|ψ(θ)>|^2 與 ∂_i K = 2 Re[<∂_iψ|ψ_t><ψ_t|ψ>]"""
    psi = program.state()
    overlap = inner_product(target, psi)
    value = abs(overlap) ** 2

    adjoint = target.copy()
    gradient = np.zeros(program.n_params, dtype=np.float64)
    for gate in reversed(program.gates):
        if gate.param_index is not None:
            rotated = apply_pauli(psi, gate.kind.generator, gate.qubits[0])
            d = -0.5j * np.vdot(adjoint.amplitudes, rotated.amplitudes)
            gradient[gate.param_index] = 2.0 * np.real(np.conj(d) * overlap)
        undo = gate.inverse()
        apply_gate_inplace(psi, undo)
        apply_gate_inplace(adjoint, undo)
    return float(value), gradient


def fidelity_and_gradient(
    spec: NpqcSpec,
    theta,
    target: StateVector,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> Tuple[float, np.ndarray]:
    return program_fidelity_and_gradient(build_program(spec, theta, v_ref), target)


def circuit_fidelity(
    spec: NpqcSpec,
    theta,
    target: StateVector,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> float:
    return fidelity(target, build_program(spec, theta, v_ref).state())


def program_parameter_shift_gradient(program: CircuitProgram, target: StateVector) -> np.ndarray:
    """參數平移規則：∂_i K = [K(θ + π/2 e_i) - K(θ - π/2 e_i)] / 2"""
    values = program.values
    gradient = np.zeros(program.n_params, dtype=np.float64)
    for i in range(program.n_params):
        shift = np.zeros_like(values)
        shift[i] = np.pi / 2
        plus = fidelity(target, program.rebind(values + shift).state())
        minus = fidelity(target, program.rebind(values - shift).state())
        gradient[i] = 0.5 * (plus - minus)
    return gradient


def parameter_shift_gradient(
    spec: NpqcSpec,
    theta,
    target: StateVector,
    v_ref: Optional[Sequence[GateOp]] = None,
) -> np.ndarray:
    return program_parameter_shift_gradient(build_program(spec, theta, v_ref), target)

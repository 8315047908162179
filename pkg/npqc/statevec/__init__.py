"""
狀態向量模擬器

稠密振幅陣列上的閘集合、內積、保真度與計算基底取樣。
"""

from .rng import make_rng
from .statevector import (
    apply_gate,
    apply_gate_inplace,
    apply_gates,
    apply_pauli,
    basis_state,
    excited_index,
    fidelity,
    inner_product,
    random_haar_state,
    sample_basis,
    zero_state,
)
from .types import Axis, GateKind, GateOp, StateVector

__all__ = [
    "Axis",
    "GateKind",
    "GateOp",
    "StateVector",
    "apply_gate",
    "apply_gate_inplace",
    "apply_gates",
    "apply_pauli",
    "basis_state",
    "excited_index",
    "fidelity",
    "inner_product",
    "make_rng",
    "random_haar_state",
    "sample_basis",
    "zero_state",
]

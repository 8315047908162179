"""
NPQC 電路

shift factor 序列、參數排列、參考參數、參考態修飾與 y-only 感測變體。
"""

from ..statevec import Axis
from .builder import (
    build_program,
    circuit_gates,
    hardware_efficient_program,
    inverse_gates,
    num_params,
    prepare_state,
    prepare_y_state,
    random_direction,
    random_params,
    reference_params,
    wrap,
)
from .shift import shift_sequence
from .types import LAYOUT_VERSION, CircuitProgram, NpqcSpec, ParamVector, Variant

__all__ = [
    "LAYOUT_VERSION",
    "Axis",
    "CircuitProgram",
    "NpqcSpec",
    "ParamVector",
    "Variant",
    "build_program",
    "circuit_gates",
    "hardware_efficient_program",
    "inverse_gates",
    "num_params",
    "prepare_state",
    "prepare_y_state",
    "random_direction",
    "random_params",
    "reference_params",
    "shift_sequence",
    "wrap",
]

"""
量子幾何

導數態、QFIM、量子自然梯度、保真度梯度與高斯保真度模型。
"""

from .export import write_qfim_csv
from .gradients import (
    circuit_fidelity,
    fidelity_and_gradient,
    gradient_states,
    parameter_shift_gradient,
    program_fidelity_and_gradient,
    program_gradient_states,
    program_parameter_shift_gradient,
    program_qfim,
    qfim,
    qfim_from_gradients,
    qng,
)
from .models import (
    fidelity_landscape,
    gaussian_fidelity,
    gradient_variance_study,
    haar_floor,
    predicted_gradient_variance,
)
from .types import GradientSet, GradientVarianceReport, LandscapePoint, QfimMatrix

__all__ = [
    "GradientSet",
    "GradientVarianceReport",
    "LandscapePoint",
    "QfimMatrix",
    "circuit_fidelity",
    "fidelity_and_gradient",
    "fidelity_landscape",
    "gaussian_fidelity",
    "gradient_states",
    "gradient_variance_study",
    "haar_floor",
    "parameter_shift_gradient",
    "predicted_gradient_variance",
    "program_fidelity_and_gradient",
    "program_gradient_states",
    "program_parameter_shift_gradient",
    "program_qfim",
    "qfim",
    "qfim_from_gradients",
    "qng",
    "write_qfim_csv",
]

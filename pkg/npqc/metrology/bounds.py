"""
量子 Cramér-Rao 結構

Pauli 旋轉電路滿足 Tr(F) <= M；算術-調和平均不等式給出 Tr(F^-1) >= M²/Tr(F) >= M。
NPQC 在 θ_r 達到等號 Tr(F^-1) = M。
"""

import logging
from typing import Optional, Union

from ..circuit import CircuitProgram, NpqcSpec
from ..config import get_config
from ..geometry import QfimMatrix, program_qfim, qfim
from .types import CramerRaoReport


logger = logging.getLogger(__name__)


def cramer_rao_bounds(
    metric: QfimMatrix,
    floor: Optional[float] = None,
    tolerance: float = 1e-6,
) -> CramerRaoReport:
    floor = get_config().eigen_floor if floor is None else floor
    rank = metric.rank(floor)
    full_rank = rank == metric.size
    if not full_rank:
        logger.warning(f"QFIM rank {rank} < M={metric.size}; skipping inverse-trace bound")
    return CramerRaoReport(
        n_params=metric.size,
        trace=metric.trace(),
        inverse_trace=metric.inverse_trace(floor) if full_rank else None,
        rank=rank,
        min_eigenvalue=metric.min_eigenvalue(),
        tolerance=tolerance,
    )


def crao_check(
    circuit: Union[NpqcSpec, CircuitProgram],
    theta=None,
    tolerance: float = 1e-6,
) -> CramerRaoReport:
    """對 NPQC (spec, θ) 或任意 CircuitProgram 檢查 Cramér-Rao 結構，只回報不拋出"""
    if isinstance(circuit, CircuitProgram):
        program = circuit if theta is None else circuit.rebind(theta)
        metric = program_qfim(program)
    else:
        metric = qfim(circuit, theta)
    report = cramer_rao_bounds(metric, tolerance=tolerance)
    logger.info(
        f"Cramer-Rao check: Tr F={report.trace:.6f}, Tr F^-1={report.inverse_trace}, "
        f"M={report.n_params}, rank={report.rank}"
    )
    return report

"""
多參數量子感測

基底索引對應 v_i、編碼、|Δθ_i| = 2 sqrt(P_i) 估計、RMSE 研究與 Cramér-Rao 檢查。
"""

from .bounds import cramer_rao_bounds, crao_check
from .protocol import (
    basis_index_map,
    encode,
    estimate,
    estimate_exact,
    leakage_fraction,
    sample_delta,
    sense_experiment,
)
from .types import (
    EXACT_SHOTS,
    REPORT_COLUMNS,
    BasisIndexMap,
    CramerRaoReport,
    SenseReport,
    SenseStudy,
)

__all__ = [
    "EXACT_SHOTS",
    "REPORT_COLUMNS",
    "BasisIndexMap",
    "CramerRaoReport",
    "SenseReport",
    "SenseStudy",
    "basis_index_map",
    "cramer_rao_bounds",
    "crao_check",
    "encode",
    "estimate",
    "estimate_exact",
    "leakage_fraction",
    "sample_delta",
    "sense_experiment",
]

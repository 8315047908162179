"""
QFIM 匯出
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ..output import array_hash, write_csv
from .types import QfimMatrix


def write_qfim_csv(
    path: Union[str, Path],
    metric: QfimMatrix,
    theta: np.ndarray,
    header: Optional[Dict[str, Any]] = None,
) -> Path:
    """以列為主序寫出 F，標頭包含 M 與 θ 的雜湊"""
    meta = dict(header or {})
    meta.update({"M": metric.size, "theta_sha256": array_hash(np.asarray(theta))})
    columns = ["row"] + [f"f{j}" for j in range(metric.size)]
    rows = ([i, *metric.entries[i].tolist()] for i in range(metric.size))
    return write_csv(path, meta, columns, rows)

"""
實驗輸出

CSV 第一行為 '#' 加上標準化 JSON 標頭 (指令、套件版本與完整配置)，
之後是資料列。浮點數以 17 位有效數字輸出，重跑相同配置可得到逐位元相同的資料列。
"""

import csv
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import numpy as np

from .exceptions import NPQCConfigurationError


logger = logging.getLogger(__name__)

HEADER_PREFIX = "# "


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if hasattr(value, "value") and hasattr(value, "name"):
        return value.value
    return value


def canonical_json(data: Any) -> str:
    """排序鍵、無多餘空白的 JSON"""
    return json.dumps(_jsonable(data), sort_keys=True, separators=(",", ":"), allow_nan=False)


def sha256_hex(data: Union[str, bytes]) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def array_hash(values: np.ndarray) -> str:
    """float64 位元組的 sha256 前 16 碼"""
    return sha256_hex(np.ascontiguousarray(values, dtype=np.float64).tobytes())[:16]


def format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if value is None:
        return ""
    if hasattr(value, "value") and hasattr(value, "name"):
        return str(value.value)
    return str(value)


def write_csv(
    path: Union[str, Path],
    header: Dict[str, Any],
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> Path:
    """寫入帶 JSON 標頭的 CSV"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", newline="", encoding="utf-8") as handle:
        handle.write(HEADER_PREFIX + canonical_json(header) + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
            count += 1
    logger.info(f"Wrote {count} rows to {path}")
    return path


def read_header(path: Union[str, Path]) -> Dict[str, Any]:
    """讀回輸出檔案的 JSON 標頭"""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        first = handle.readline()
    if not first.startswith("#"):
        raise NPQCConfigurationError(
            f"{path} has no '#' header line", config_key=str(path)
        )
    try:
        return json.loads(first[1:].strip())
    except json.JSONDecodeError as e:
        raise NPQCConfigurationError(
            f"Malformed header in {path}: {e}", config_key=str(path)
        ) from e


def read_rows(path: Union[str, Path]) -> List[Dict[str, str]]:
    """讀取資料列 (略過標頭行)"""
    with Path(path).open("r", encoding="utf-8") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))


def data_lines(path: Union[str, Path], skip_header: bool = True) -> List[str]:
    """不含標頭的原始資料行，用於比對重跑結果"""
    with Path(path).open("r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    return [line for line in lines if not (skip_header and line.startswith("#"))]

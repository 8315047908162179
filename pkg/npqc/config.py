"""
NPQC 配置管理系統

提供模擬器與實驗流程的配置管理功能，支援環境變數和配置檔案 (JSON / YAML)。
"""

import json
import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .exceptions import NPQCConfigurationError


# 稠密振幅陣列的硬上限 (2^30 個 complex128 約 16 GiB)
HARD_QUBIT_LIMIT = 30
# 至少支援 14 個量子位元
MIN_QUBIT_LIMIT = 14

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
VALID_SHIFT_ORDERS = ["ascending", "random"]


@dataclass
class NPQCConfig:
    """NPQC 模組配置類別"""

    # 模擬器配置
    max_qubits: int = 24
    threads: int = 1

    # 量子 Fisher 資訊矩陣求逆
    ridge: float = 1e-6
    eigen_floor: float = 1e-10

    # shift factor 遞迴中元素的挑選順序
    shift_order: str = "ascending"
    shift_seed: int = 0

    # 日誌配置
    log_level: str = "INFO"
    log_format: str = "%(levelname)s %(asctime)s %(module)s %(process)d %(thread)d %(message)s"

    # 實驗輸出
    output_dir: str = "results"

    @classmethod
    def from_env(cls) -> "NPQCConfig":
        """從環境變數載入配置"""
        config = cls()
        config._apply_env()
        return config

    def _apply_env(self) -> None:
        env_mapping = {
            "NPQC_MAX_QUBITS": ("max_qubits", int),
            "NPQC_THREADS": ("threads", int),
            "NPQC_RIDGE": ("ridge", float),
            "NPQC_EIGEN_FLOOR": ("eigen_floor", float),
            "NPQC_SHIFT_ORDER": ("shift_order", str),
            "NPQC_SHIFT_SEED": ("shift_seed", int),
            "NPQC_LOG_LEVEL": ("log_level", lambda x: x.upper()),
            "NPQC_OUTPUT_DIR": ("output_dir", str),
        }

        for env_key, (attr_name, type_converter) in env_mapping.items():
            if env_value := os.getenv(env_key):
                try:
                    setattr(self, attr_name, type_converter(env_value))
                except (ValueError, TypeError) as e:
                    raise NPQCConfigurationError(
                        f"Invalid value for {env_key}: {env_value}",
                        config_key=env_key
                    ) from e

    @classmethod
    def from_file(cls, config_path: Path) -> "NPQCConfig":
        """從配置檔案載入配置，環境變數優先"""
        config_path = Path(config_path)
        if not config_path.exists():
            raise NPQCConfigurationError(
                f"Configuration file not found: {config_path}"
            )

        text = config_path.read_text(encoding="utf-8")
        try:
            if config_path.suffix in (".yaml", ".yml"):
                data = yaml.safe_load(text) or {}
            else:
                data = json.loads(text)
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise NPQCConfigurationError(
                f"Cannot parse configuration file {config_path}: {e}"
            ) from e

        if not isinstance(data, dict):
            raise NPQCConfigurationError(
                f"Configuration file {config_path} must contain a mapping"
            )

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise NPQCConfigurationError(
                f"Unknown configuration keys: {unknown}",
                config_key=unknown[0]
            )

        config = cls(**data)
        config._apply_env()
        return config

    def validate(self) -> None:
        """驗證配置的有效性"""
        errors = []

        if not MIN_QUBIT_LIMIT <= self.max_qubits <= HARD_QUBIT_LIMIT:
            errors.append(
                f"max_qubits must be between {MIN_QUBIT_LIMIT} and {HARD_QUBIT_LIMIT}"
            )

        if self.threads <= 0:
            errors.append("threads must be positive")

        if self.ridge < 0:
            errors.append("ridge must be non-negative")

        if self.eigen_floor <= 0:
            errors.append("eigen_floor must be positive")

        if self.shift_order not in VALID_SHIFT_ORDERS:
            errors.append(f"shift_order must be one of {VALID_SHIFT_ORDERS}")

        if self.log_level not in VALID_LOG_LEVELS:
            errors.append(f"log_level must be one of {VALID_LOG_LEVELS}")

        if errors:
            raise NPQCConfigurationError(
                f"Configuration validation failed: {'; '.join(errors)}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """轉換為字典格式"""
        return {
            "max_qubits": self.max_qubits,
            "threads": self.threads,
            "ridge": self.ridge,
            "eigen_floor": self.eigen_floor,
            "shift_order": self.shift_order,
            "shift_seed": self.shift_seed,
            "log_level": self.log_level,
            "log_format": self.log_format,
            "output_dir": self.output_dir,
        }


# 全域配置實例
_global_config: Optional[NPQCConfig] = None


def get_config() -> NPQCConfig:
    """取得全域 NPQC 配置實例"""
    global _global_config
    if _global_config is None:
        _global_config = NPQCConfig.from_env()
        _global_config.validate()
    return _global_config


def set_config(config: NPQCConfig) -> None:
    """設定全域 NPQC 配置實例"""
    global _global_config
    config.validate()
    _global_config = config


def configure_logging(config: Optional[NPQCConfig] = None) -> None:
    """安裝主控台日誌處理器，只應由命令列入口呼叫"""
    config = config or get_config()
    root = logging.getLogger("npqc")
    if not any(getattr(h, "_npqc_console", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(config.log_format))
        handler._npqc_console = True  # type: ignore[attr-defined]
        root.addHandler(handler)
    root.setLevel(config.log_level)

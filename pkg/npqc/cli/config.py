"""
實驗配置

每個指令有一組預設值；來源優先順序為 預設值 < 配置檔 (JSON / YAML / 先前輸出的 CSV 標頭) < 命令列旗標。
合併後以 jsonschema 驗證。
"""

import copy
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import jsonschema
import numpy as np
import yaml

from .. import __version__
from ..config import VALID_SHIFT_ORDERS, get_config
from ..exceptions import NPQCConfigurationError
from ..output import read_header


logger = logging.getLogger(__name__)

COMMANDS = ("qfim", "train", "scan", "sense", "superpose", "landscape", "rates")

DEFAULT_INFIDELITIES = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "qfim": {
        "n_qubits": 6,
        "n_layers": 3,
        "variant": "full",
        "theta": "reference",
        "instances": 1,
    },
    "train": {
        "n_qubits": 10,
        "n_layers": 10,
        "variant": "full",
        "methods": ["adaptive", "standard", "adam"],
        "inits": ["reference"],
        "infidelity": 0.9,
        "instances": 10,
        "max_iters": 50,
        "target_infidelity": 0.01,
        "adaptive_iters": 3,
        "post_adaptive_rate": 0.5,
        "fixed_rate": 1.0,
        "adam_rate": 0.05,
        "use_qfim": False,
        "k0": 1.0,
    },
    "scan": {
        "qubits": [10],
        "layers": [10],
        "variant": "full",
        "inits": ["reference", "random"],
        "infidelities": DEFAULT_INFIDELITIES,
        "instances": 50,
        "use_qfim": False,
    },
    "sense": {
        "n_qubits": 8,
        "n_layers": 4,
        "norms": [0.1],
        "shots": [100, 1000, 10000, 100000, 1000000],
        "instances": 10,
        "direction": "random",
        "exact": True,
    },
    "superpose": {
        "n_qubits": 10,
        "layers": [10],
        "infidelities": [0.8],
        "instances": 100,
        "grid_size": 0,
        "margin": 0.05,
        "orthogonal": "deterministic",
    },
    "landscape": {
        "n_qubits": 10,
        "n_layers": 10,
        "variant": "full",
        "distances": [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0],
        "instances": 20,
        "variance_distances": [1.0, 2.0, 3.0],
        "variance_samples": 20,
    },
    "rates": {
        "n_qubits": 10,
        "n_layers": 10,
        "infidelities": [0.5, 0.9],
        "scales": [0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
        "instances": 20,
    },
}

_EVEN_QUBITS = {"type": "integer", "minimum": 2, "multipleOf": 2}
_UNIT_OPEN = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}


def _array(items: Dict[str, Any]) -> Dict[str, Any]:
    return {"type": "array", "items": items, "minItems": 1}


PROPERTY_SCHEMAS: Dict[str, Dict[str, Any]] = {
    "seed": {"type": "integer", "minimum": 0},
    "threads": {"type": "integer", "minimum": 1},
    "out": {"type": "string", "minLength": 1},
    "shift_order": {"enum": VALID_SHIFT_ORDERS},
    "shift_seed": {"type": "integer", "minimum": 0},
    "n_qubits": _EVEN_QUBITS,
    "n_layers": {"type": "integer", "minimum": 1},
    "qubits": _array(_EVEN_QUBITS),
    "layers": _array({"type": "integer", "minimum": 1}),
    "variant": {"enum": ["full", "y_only"]},
    "theta": {"enum": ["reference", "random"]},
    "instances": {"type": "integer", "minimum": 1},
    "methods": _array({"enum": ["adaptive", "standard", "adam"]}),
    "inits": _array({"enum": ["reference", "random"]}),
    "infidelity": _UNIT_OPEN,
    "infidelities": _array(_UNIT_OPEN),
    "max_iters": {"type": "integer", "minimum": 0},
    "target_infidelity": {"type": ["number", "null"], "minimum": 0, "exclusiveMaximum": 1},
    "adaptive_iters": {"type": "integer", "minimum": 0},
    "post_adaptive_rate": _POSITIVE,
    "fixed_rate": _POSITIVE,
    "adam_rate": _POSITIVE,
    "use_qfim": {"type": "boolean"},
    "k0": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
    "norms": _array({"type": "number", "minimum": 0, "exclusiveMaximum": 3.14159}),
    "shots": _array({"type": "integer", "minimum": 1}),
    "direction": {"enum": ["random", "equal"]},
    "exact": {"type": "boolean"},
    "grid_size": {"type": "integer", "minimum": 0},
    "margin": {"type": "number", "minimum": 0, "exclusiveMaximum": 0.5},
    "orthogonal": {"enum": ["deterministic", "random"]},
    "distances": _array({"type": "number", "minimum": 0}),
    "variance_distances": _array(_POSITIVE),
    "variance_samples": {"type": "integer", "minimum": 2},
    "scales": _array(_POSITIVE),
}

COMMON_FIELDS = ("seed", "threads", "out", "shift_order", "shift_seed")


def common_defaults() -> Dict[str, Any]:
    config = get_config()
    return {
        "seed": 0,
        "threads": config.threads,
        "out": config.output_dir,
        "shift_order": config.shift_order,
        "shift_seed": config.shift_seed,
    }


def schema_for(command: str) -> Dict[str, Any]:
    names = list(COMMON_FIELDS) + list(COMMAND_DEFAULTS[command])
    return {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": f"npqc-lab {command}",
        "type": "object",
        "properties": {name: PROPERTY_SCHEMAS[name] for name in names},
        "required": names,
        "additionalProperties": False,
    }


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """讀取 JSON / YAML 配置，或先前輸出 CSV 的 '#' 標頭"""
    path = Path(path)
    if not path.exists():
        raise NPQCConfigurationError(f"Config file not found: {path}", config_key=str(path))

    try:
        if path.suffix.lower() == ".csv":
            data = read_header(path).get("config", {})
        else:
            with path.open("r", encoding="utf-8") as handle:
                if path.suffix.lower() == ".json":
                    data = json.load(handle)
                else:
                    data = yaml.safe_load(handle)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise NPQCConfigurationError(f"Failed to parse {path}: {e}", config_key=str(path)) from e

    if not isinstance(data, dict):
        raise NPQCConfigurationError(f"Config in {path} must be a mapping", config_key=str(path))
    return data


@dataclass
class ExperimentConfig:
    """單一指令的完整實驗配置，全部欄位寫入輸出標頭"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def resolve(
        cls,
        command: str,
        config_path: Optional[Union[str, Path]] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> "ExperimentConfig":
        if command not in COMMAND_DEFAULTS:
            raise NPQCConfigurationError(f"Unknown command: {command}", config_key="command")
        params = common_defaults()
        params.update(copy.deepcopy(COMMAND_DEFAULTS[command]))
        if config_path is not None:
            params.update(load_config_file(config_path))
            logger.info(f"Loaded {command} config from {config_path}")
        params.update({k: v for k, v in (overrides or {}).items() if v is not None})
        config = cls(command, params)
        config.validate()
        return config

    def validate(self) -> None:
        validator = jsonschema.Draft7Validator(schema_for(self.command))
        errors = sorted(validator.iter_errors(self.params), key=lambda e: list(e.path))
        if errors:
            messages = [
                f"{'.'.join(str(p) for p in error.path) or '<root>'}: {error.message}"
                for error in errors
            ]
            first = errors[0].path[0] if errors[0].path else None
            raise NPQCConfigurationError(
                f"Invalid {self.command} configuration: {'; '.join(messages)}",
                config_key=str(first) if first is not None else None
            )

    def __getitem__(self, key: str) -> Any:
        return self.params[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    @property
    def out_dir(self) -> Path:
        return Path(self.params["out"])

    def header(self, **extra: Any) -> Dict[str, Any]:
        header = {"command": self.command, "version": __version__, "config": self.params}
        header.update(extra)
        return header

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, **copy.deepcopy(self.params)}


def parse_list(text: Optional[str], kind: Callable[[float], Any] = float) -> Optional[List[Any]]:
    """解析 "0.1,0.2" 或以十倍遞增的 "1e2..1e6" """
    if text is None:
        return None
    values: List[Any] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if ".." in token:
                low, high = (float(part) for part in token.split("..", 1))
                exponents = np.arange(np.log10(low), np.log10(high) + 1e-9, 1.0)
                values.extend(kind(round(10.0 ** e, 12)) for e in exponents)
            else:
                values.append(kind(float(token)))
        except ValueError as e:
            raise NPQCConfigurationError(f"Cannot parse list value {token!r}", config_key=text) from e
    return values


def int_value(value: float) -> int:
    if value != int(value):
        raise ValueError(f"{value} is not an integer")
    return int(value)

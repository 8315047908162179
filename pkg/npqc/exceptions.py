"""
NPQC 模組自定義例外類別

定義模擬器、電路建構、幾何計算與實驗流程中使用的例外，提供清晰的錯誤分類。
索引、形狀與參數錯誤同時繼承對應的內建例外，呼叫端可以任選一種方式捕捉。
"""

from typing import Optional, Any, Dict, Sequence


class NPQCError(Exception):
    """NPQC 模組基礎例外類別"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def __str__(self) -> str:
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class NPQCConfigurationError(NPQCError):
    """配置相關錯誤"""

    def __init__(self, message: str, config_key: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="NPQC_CONFIG_ERROR", **kwargs)
        self.config_key = config_key


class NPQCCapacityError(NPQCError):
    """量子位元數超出模擬器容量"""

    def __init__(
        self,
        message: str,
        n_qubits: Optional[int] = None,
        limit: Optional[int] = None,
        **kwargs
    ):
        super().__init__(message, error_code="NPQC_CAPACITY_ERROR", **kwargs)
        self.n_qubits = n_qubits
        self.limit = limit


class NPQCQubitIndexError(NPQCError, IndexError):
    """量子位元索引無效"""

    def __init__(self, message: str, qubit: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="NPQC_QUBIT_INDEX_ERROR", **kwargs)
        self.qubit = qubit


class NPQCShapeError(NPQCError, ValueError):
    """維度或參數長度不一致"""

    def __init__(
        self,
        message: str,
        expected: Optional[Any] = None,
        actual: Optional[Any] = None,
        **kwargs
    ):
        super().__init__(message, error_code="NPQC_SHAPE_ERROR", **kwargs)
        self.expected = expected
        self.actual = actual


class NPQCArgumentError(NPQCError, ValueError):
    """參數值不合法"""

    def __init__(self, message: str, argument: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="NPQC_ARGUMENT_ERROR", **kwargs)
        self.argument = argument


class NPQCDomainError(NPQCError, ValueError):
    """數值超出公式的定義域"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NPQC_DOMAIN_ERROR", **kwargs)


class NPQCSingularityError(NPQCError):
    """線性系統奇異，無法求解"""

    def __init__(self, message: str, min_eigenvalue: Optional[float] = None, **kwargs):
        super().__init__(message, error_code="NPQC_SINGULARITY_ERROR", **kwargs)
        self.min_eigenvalue = min_eigenvalue


class NPQCConvergedError(NPQCError):
    """保真度已達 1，不需要再更新參數"""

    def __init__(self, message: str, fidelity: Optional[float] = None, **kwargs):
        super().__init__(message, error_code="NPQC_CONVERGED", **kwargs)
        self.fidelity = fidelity


class NPQCStationaryPointError(NPQCError):
    """梯度消失，無法計算自適應學習率"""

    def __init__(self, message: str, grad_norm: Optional[float] = None, **kwargs):
        super().__init__(message, error_code="NPQC_STATIONARY_POINT", **kwargs)
        self.grad_norm = grad_norm


class NPQCSpecError(NPQCError):
    """電路規格或實驗請求無法實現"""


class NPQCDepthError(NPQCSpecError):
    """層數超過 p_max"""

    def __init__(
        self,
        message: str,
        n_layers: Optional[int] = None,
        max_layers: Optional[int] = None,
        **kwargs
    ):
        super().__init__(message, error_code="NPQC_DEPTH_ERROR", **kwargs)
        self.n_layers = n_layers
        self.max_layers = max_layers


class NPQCVariantError(NPQCSpecError):
    """操作不支援此電路變體"""

    def __init__(self, message: str, variant: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="NPQC_VARIANT_ERROR", **kwargs)
        self.variant = variant


class NPQCInfeasibleError(NPQCSpecError):
    """請求的保真度無法達成"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NPQC_INFEASIBLE", **kwargs)


class NPQCDegenerateTargetError(NPQCSpecError):
    """目標參數與參考參數重合，方向無法定義"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NPQC_DEGENERATE_TARGET", **kwargs)


class NPQCProtocolViolationError(NPQCError):
    """感測協議的一階假設不成立"""

    def __init__(self, message: str, parameter_index: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="NPQC_PROTOCOL_VIOLATION", **kwargs)
        self.parameter_index = parameter_index


class NPQCCollisionError(NPQCError):
    """基底索引重複或落在 |0...0>"""

    def __init__(self, message: str, indices: Optional[Sequence[int]] = None, **kwargs):
        super().__init__(message, error_code="NPQC_COLLISION", **kwargs)
        self.indices = list(indices) if indices is not None else []

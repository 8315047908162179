"""
NPQC (Natural Parameterized Quantum Circuit) 模擬與實驗模組

此模組提供：
- statevec: 純態向量模擬器
- circuit: NPQC 電路建構與參數排列
- geometry: 量子 Fisher 資訊矩陣、梯度與高斯保真度模型
- training: 自適應梯度上升與對照最佳化器
- metrology: 多參數量子感測
- superposition: 不經訓練的疊加態合成
- cli: npqc-lab 實驗命令列
"""

__version__ = "0.1.0"
__author__ = "NPQC Lab Team"

# 模組級別的導入
from .config import NPQCConfig
from .exceptions import NPQCCapacityError, NPQCConfigurationError, NPQCError, NPQCSpecError

__all__ = [
    "NPQCConfig",
    "NPQCError",
    "NPQCCapacityError",
    "NPQCConfigurationError",
    "NPQCSpecError",
]

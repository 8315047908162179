"""
npqc-lab 實驗命令列
"""

from .commands import main
from .config import ExperimentConfig

__all__ = ["ExperimentConfig", "main"]

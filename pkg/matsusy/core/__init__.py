"""核心计算模块：矩阵、Riccati、超势族、验证、谱、梯算子、物理模型"""

from matsusy.core.errors import (
    MatsusyError,
    DomainError,
    ParameterGuardError,
    NoSuchBoundStateError,
    DimensionError,
    NumericalError,
    MemoryBudgetError,
    BrokenSupersymmetryError,
    ConfigError,
)

__all__ = [
    "MatsusyError",
    "DomainError",
    "ParameterGuardError",
    "NoSuchBoundStateError",
    "DimensionError",
    "NumericalError",
    "MemoryBudgetError",
    "BrokenSupersymmetryError",
    "ConfigError",
]

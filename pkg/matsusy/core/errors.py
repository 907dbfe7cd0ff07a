"""异常定义"""

from typing import Iterable, List, Optional


class MatsusyError(Exception):
    """基础异常"""


class DomainError(MatsusyError):
    """定义域异常：点在定义域外或过于靠近奇点"""

    def __init__(self, message: str, x: Optional[float] = None):
        super().__init__(message)
        self.x = x


class ParameterGuardError(MatsusyError):
    """参数约束异常，携带所有被违反的约束"""

    def __init__(self, violations: Iterable[str]):
        self.violations: List[str] = list(violations)
        super().__init__("; ".join(self.violations))


class NoSuchBoundStateError(ParameterGuardError):
    """请求的能级不满足束缚态条件"""


class DimensionError(MatsusyError):
    """矩阵或分块维度不匹配"""


class NumericalError(MatsusyError):
    """数值失败"""


class MemoryBudgetError(NumericalError):
    """网格超出内存上限"""


class BrokenSupersymmetryError(NumericalError):
    """不存在可归一化的基态"""

    def __init__(self, message: str, kappa: Optional[float] = None, residual: Optional[float] = None):
        super().__init__(message)
        self.kappa = kappa
        self.residual = residual


class ConfigError(MatsusyError):
    """配置异常：未知键或格式错误"""

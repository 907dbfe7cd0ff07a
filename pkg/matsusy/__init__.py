"""matsusy - 矩阵超势、形状不变性验证与耦合通道谱计算"""

__version__ = "0.1.0"

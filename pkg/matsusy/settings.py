"""全局配置"""

import os
from dataclasses import dataclass, fields
from typing import Any, Dict, Optional
from dotenv import load_dotenv

load_dotenv()

ENV_PREFIX = "MATSUSY_"


@dataclass
class Settings:
    """全局配置类"""

    # 验证容差
    shape_tol: float = 1e-9
    determining_tol: float = 1e-9
    gap_tol: float = 2e-3
    reduction_tol: float = 1e-10
    annihilation_tol: float = 1e-2

    # 验证采样网格
    sample_count: int = 50
    sample_margin: float = 0.05
    sample_span: float = 10.0

    # 谱计算
    grid_points: int = 2000
    memory_limit_mb: float = 512.0
    # Dirichlet wall offset for radial models, as a fraction of L
    radial_epsilon_ratio: float = 1e-3

    # 日志
    log_level: str = "INFO"
    log_file: Optional[str] = "logs/matsusy.log"

    def __post_init__(self):
        """从环境变量加载配置"""
        for f in fields(self):
            raw = os.getenv(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.name == "log_file":
                self.log_file = raw or None
            elif isinstance(getattr(self, f.name), bool):
                setattr(self, f.name, raw.strip().lower() in ("1", "true", "yes"))
            elif isinstance(getattr(self, f.name), int):
                setattr(self, f.name, int(raw))
            elif isinstance(getattr(self, f.name), float):
                setattr(self, f.name, float(raw))
            else:
                setattr(self, f.name, raw)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {f.name: getattr(self, f.name) for f in fields(self)}

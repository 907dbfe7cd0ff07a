"""计时器工具 - 按步骤累计耗时"""

import time
from contextlib import contextmanager
from typing import Dict, Iterator, Optional
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class Timer:
    """分段计时器

    每个 lap 记一段耗时，同名 lap 累加；to_dict 给出可写进报告的秒数。
    """

    def __init__(self, name: Optional[str] = None):
        self.name = name or "Timer"
        self.laps: Dict[str, float] = {}

    @contextmanager
    def lap(self, label: str) -> Iterator["Timer"]:
        """对一段代码计时"""
        start = time.perf_counter()
        logger.debug(f"{self.name}/{label} started")
        try:
            yield self
        finally:
            spent = time.perf_counter() - start
            self.laps[label] = self.laps.get(label, 0.0) + spent
            logger.info(f"{self.name}/{label} completed in {spent:.2f}s")

    @property
    def total(self) -> float:
        return sum(self.laps.values())

    def to_dict(self) -> Dict[str, float]:
        return {**{k: round(v, 6) for k, v in self.laps.items()}, "total": round(self.total, 6)}

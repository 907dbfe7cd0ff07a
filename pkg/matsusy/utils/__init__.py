"""工具模块"""

from matsusy.utils.logger import get_logger, configure_logging
from matsusy.utils.timer import Timer
from matsusy.utils.json_utils import JSONUtils

__all__ = [
    "get_logger",
    "configure_logging",
    "Timer",
    "JSONUtils",
]

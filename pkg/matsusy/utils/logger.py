"""日志工具

所有模块的日志器都挂在 "matsusy" 包日志器下，处理器只装在包日志器上。
报告写 stdout，日志一律写 stderr（以及可选的日志文件）。
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional

ROOT_NAME = "matsusy"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _level(level: str) -> int:
    return getattr(logging, str(level).upper(), logging.INFO)


def configure_logging(level: str = "INFO", log_file: Optional[str] = None) -> logging.Logger:
    """(重新)配置包日志器；重复调用会替换已有处理器"""
    root = logging.getLogger(ROOT_NAME)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(_level(level))
    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    if log_file:
        try:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
        except OSError as e:
            root.warning(f"cannot open log file {log_file}: {e}")
        else:
            file_handler.setFormatter(formatter)
            root.addHandler(file_handler)

    root.propagate = False
    return root


def get_logger(name: str) -> logging.Logger:
    """获取日志器

    首次调用时按 MATSUSY_LOG_LEVEL / MATSUSY_LOG_FILE 配置包日志器，
    MATSUSY_LOG_FILE 为空字符串时只输出到控制台。
    """
    root = logging.getLogger(ROOT_NAME)
    if not root.handlers:
        configure_logging(
            os.getenv("MATSUSY_LOG_LEVEL", "INFO"),
            os.getenv("MATSUSY_LOG_FILE", "logs/matsusy.log") or None,
        )
    if name == ROOT_NAME or name.startswith(ROOT_NAME + "."):
        return logging.getLogger(name)
    return root.getChild(name)

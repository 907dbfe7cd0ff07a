"""flat key=value 配置文件加载器"""

from pathlib import Path
from typing import Dict, Iterable, Optional

from matsusy.core.errors import ConfigError
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class ConfigLoader:
    """每行一个 key=value；# 开头为注释；空行忽略"""

    @staticmethod
    def parse(text: str, allowed: Optional[Iterable[str]] = None) -> Dict[str, str]:
        allowed_set = set(allowed) if allowed is not None else None
        result: Dict[str, str] = {}
        errors = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                errors.append(f"line {lineno}: expected key=value, got {raw!r}")
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if not key:
                errors.append(f"line {lineno}: empty key")
                continue
            if allowed_set is not None and key not in allowed_set:
                errors.append(f"line {lineno}: unknown key {key!r}")
                continue
            result[key] = value
        if errors:
            if allowed_set is not None:
                errors.append(f"accepted keys: {', '.join(sorted(allowed_set))}")
            raise ConfigError("; ".join(errors))
        return result

    @staticmethod
    def load(file_path: str, allowed: Optional[Iterable[str]] = None) -> Dict[str, str]:
        """加载配置文件"""
        path = Path(file_path)
        if not path.exists():
            raise ConfigError(f"config file not found: {file_path}")
        data = ConfigLoader.parse(path.read_text(encoding="utf-8"), allowed)
        logger.info(f"Loaded config file: {file_path} ({len(data)} keys)")
        return data

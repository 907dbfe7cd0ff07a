"""导出器（可扩展）"""

import csv
import io
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

from matsusy.utils.json_utils import JSONUtils
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class Exporter(ABC):
    """导出器抽象基类：render 生成文本，export 写入文件"""

    @abstractmethod
    def render(self, data: Any) -> str:
        """渲染为文本"""
        pass

    def export(self, data: Any, output_path: str) -> bool:
        """导出到文件"""
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            text = self.render(data)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info(f"Exported data to: {output_path}")
            return True
        except OSError as e:
            logger.error(f"Failed to export to {output_path}: {e}")
            return False


class JSONExporter(Exporter):
    """结构化文本（JSON）导出器"""

    def render(self, data: Any) -> str:
        return JSONUtils.dumps(data) + "\n"


class CSVExporter(Exporter):
    """CSV 导出器：data 为 {"header": [...], "rows": [[...], ...]}"""

    def render(self, data: Any) -> str:
        header: List[str] = list(data.get("header", []))
        rows = data.get("rows", [])
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows:
            writer.writerow([self._cell(v) for v in row])
        return buffer.getvalue()

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, float):
            return JSONUtils.format_float(value)
        sanitized = JSONUtils.sanitize(value)
        if isinstance(sanitized, float):
            return JSONUtils.format_float(sanitized)
        return str(sanitized)


class TableExporter(Exporter):
    """纯文本对齐表格"""

    def render(self, data: Any) -> str:
        header: List[str] = [str(h) for h in data.get("header", [])]
        rows = [[CSVExporter._cell(v) for v in row] for row in data.get("rows", [])]
        title: Optional[str] = data.get("title")
        widths = [len(h) for h in header]
        for row in rows:
            for i, cell in enumerate(row):
                if i < len(widths):
                    widths[i] = max(widths[i], len(cell))
                else:
                    widths.append(len(cell))
        lines = []
        if title:
            lines.append(title)
        if header:
            lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
            lines.append("  ".join("-" * w for w in widths))
        for row in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"


EXPORTERS: Dict[str, Exporter] = {
    "structured-text": JSONExporter(),
    "json": JSONExporter(),
    "csv": CSVExporter(),
    "table": TableExporter(),
}


def get_exporter(fmt: str) -> Exporter:
    if fmt not in EXPORTERS:
        raise ValueError(f"unknown output format: {fmt} (expected one of {', '.join(EXPORTERS)})")
    return EXPORTERS[fmt]

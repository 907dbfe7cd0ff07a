"""输入输出：报告导出与配置文件加载"""

from matsusy.io.config_loader import ConfigLoader
from matsusy.io.exporter import CSVExporter, Exporter, JSONExporter, TableExporter

__all__ = ["ConfigLoader", "Exporter", "JSONExporter", "CSVExporter", "TableExporter"]

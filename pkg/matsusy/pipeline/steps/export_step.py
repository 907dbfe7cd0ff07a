"""导出步骤：按输出格式渲染报告"""

from typing import Any, Dict

from matsusy.io.exporter import get_exporter
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class ExportStep(BaseStep):
    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        fmt = config.format
        if fmt in ("structured-text", "json"):
            payload = {
                "command": config.command,
                "config": config.to_dict(),
                "passed": context.get("passed"),
                "result": context.get("report"),
            }
        elif fmt == "csv":
            payload = context.get("csv") or context.get("table", {})
        else:
            payload = dict(context.get("table", {}))
        exporter = get_exporter(fmt)
        context["rendered"] = exporter.render(payload)
        if config.output:
            if not exporter.export(payload, config.output):
                context["errors"].append({"step": "ExportStep", "error": f"could not write {config.output}"})
        return context

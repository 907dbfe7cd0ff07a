"""目录步骤：list 表格与 catalog 文档"""

from typing import Any, Dict

from matsusy.core.catalog import FAMILIES, catalog_document
from matsusy.core.models import MODELS, models_document
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class ListStep(BaseStep):
    """族与模型一览，可按维数过滤"""

    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        dim = config.dim
        families = [info.to_dict() for info in FAMILIES.values() if dim is None or info.dim == dim]
        models = [m.to_dict() for m in MODELS.values() if dim is None or m.dim == dim]
        rows = [["family", f["tag"], f["dim"], " ".join(f["parameters"]), f["domain_rule"], f["summary"]] for f in families]
        rows += [
            ["model", m["tag"], m["dim"], " ".join(m["parameters"]), m["geometry"], m["summary"]] for m in models
        ]
        context["report"] = {
            "families": families,
            "models": models,
            "counts": {
                "families_2x2": sum(1 for f in families if f["dim"] == 2),
                "families_3x3": sum(1 for f in families if f["dim"] == 3),
                "models": len(models),
            },
        }
        context["table"] = {
            "title": f"{len(families)} families, {len(models)} models",
            "header": ["kind", "tag", "dim", "parameters", "domain", "summary"],
            "rows": rows,
        }
        context["passed"] = True
        logger.info(f"Listed {len(families)} families and {len(models)} models")
        return context


class CatalogStep(BaseStep):
    """机器可读的族与模型注册表"""

    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        document = catalog_document()
        document.update(models_document())
        context["report"] = document
        context["table"] = {
            "header": ["kind", "tag", "dim"],
            "rows": [["family", f["tag"], f["dim"]] for f in document["families"]]
            + [["model", m["tag"], m["dim"]] for m in document["models"]],
        }
        context["passed"] = True
        return context

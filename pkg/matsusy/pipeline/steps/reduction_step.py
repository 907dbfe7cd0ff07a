"""约化步骤：模型势与族超势代入结果的逐点比较"""

from typing import Any, Dict

from matsusy.core.errors import ConfigError
from matsusy.core.models import check_reduction
from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.pipeline.steps.spectrum_step import model_params
from matsusy.utils.logger import get_logger

logger = get_logger(__name__)


class ReductionStep(BaseStep):
    def execute(self, context: Dict[str, Any]) -> Dict[str, Any]:
        config = context["config"]
        if not config.model:
            raise ConfigError("reduce needs --model")
        report = check_reduction(config.model, model_params(config), convention=config.convention)
        passed = report.passed(config.reduction_tol)
        data = report.to_dict()
        context["report"] = data
        header = ["model", "family", "deviation", "offset", "expected_offset", "passed"]
        rows = [[data["model"], data["family"], data["deviation"], data["offset"], data["expected_offset"],
                 "yes" if passed else "no"]]
        context["table"] = {"header": header, "rows": rows}
        context["csv"] = {"header": header, "rows": rows}
        context["passed"] = passed
        logger.info(f"reduce {config.model}: deviation={report.deviation:.3e}")
        return context

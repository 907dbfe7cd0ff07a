"""Pipeline 调度器"""

from typing import Any, Dict, List, Type

from matsusy.pipeline.run_config import RunConfig
from matsusy.pipeline.steps import (
    BaseStep,
    CatalogStep,
    ExportStep,
    LadderStep,
    ListStep,
    ReductionStep,
    SpectrumStep,
    VerifyStep,
)
from matsusy.settings import Settings
from matsusy.utils.logger import get_logger
from matsusy.utils.timer import Timer

logger = get_logger(__name__)

COMMAND_STEPS: Dict[str, List[Type[BaseStep]]] = {
    "list": [ListStep, ExportStep],
    "catalog": [CatalogStep, ExportStep],
    "verify": [VerifyStep, ExportStep],
    "spectrum": [SpectrumStep, ExportStep],
    "ladder": [LadderStep, ExportStep],
    "reduce": [ReductionStep, ExportStep],
}


class PipelineOrchestrator:
    """Pipeline 调度器 - 每个命令对应一串步骤"""

    def __init__(self, settings: Settings):
        self.settings = settings

    def steps_for(self, command: str) -> List[BaseStep]:
        return [step_cls(self.settings) for step_cls in COMMAND_STEPS[command]]

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """运行命令对应的全部步骤，返回上下文"""
        timer = Timer(config.command)
        context: Dict[str, Any] = {"config": config, "errors": [], "passed": None}
        for step in self.steps_for(config.command):
            name = step.__class__.__name__
            logger.info(f"Running step: {name}")
            try:
                with timer.lap(name):
                    context = step.execute(context)
            except Exception as e:
                logger.error(f"Error in step {name}: {e}")
                context["errors"].append({"step": name, "error": str(e)})
                if not step.can_continue_on_error():
                    raise
            if context.get("stop", False):
                logger.warning("Pipeline stopped by step")
                break
        context["timings"] = timer.to_dict()
        return context

    @staticmethod
    def step_names(command: str) -> List[str]:
        return [step_cls.__name__ for step_cls in COMMAND_STEPS[command]]

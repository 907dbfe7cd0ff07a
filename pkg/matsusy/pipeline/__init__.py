"""命令调度"""

from matsusy.pipeline.orchestrator import PipelineOrchestrator
from matsusy.pipeline.run_config import RunConfig

__all__ = ["PipelineOrchestrator", "RunConfig"]

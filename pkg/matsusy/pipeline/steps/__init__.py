"""Pipeline 步骤"""

from matsusy.pipeline.steps.base_step import BaseStep
from matsusy.pipeline.steps.catalog_step import CatalogStep, ListStep
from matsusy.pipeline.steps.export_step import ExportStep
from matsusy.pipeline.steps.ladder_step import LadderStep
from matsusy.pipeline.steps.reduction_step import ReductionStep
from matsusy.pipeline.steps.spectrum_step import SpectrumStep
from matsusy.pipeline.steps.verify_step import VerifyStep

__all__ = [
    "BaseStep",
    "CatalogStep",
    "ListStep",
    "ExportStep",
    "LadderStep",
    "ReductionStep",
    "SpectrumStep",
    "VerifyStep",
]
